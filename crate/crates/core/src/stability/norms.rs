use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NormKind {
    Frobenius,
    HilbertSchmidt,
    Operator,
    Schatten(f64),
}

impl NormKind {
    pub fn all_basic() -> [NormKind; 3] {
        [NormKind::Frobenius, NormKind::HilbertSchmidt, NormKind::Operator]
    }
}

impl fmt::Display for NormKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormKind::Frobenius => write!(f, "frobenius"),
            NormKind::HilbertSchmidt => write!(f, "hilbert-schmidt"),
            NormKind::Operator => write!(f, "operator"),
            NormKind::Schatten(p) => write!(f, "schatten({p})"),
        }
    }
}

impl FromStr for NormKind {
    type Err = Error;

    /// Accepts `frobenius`, `hs`, `hilbert-schmidt`, `operator` and
    /// `schatten(p)` or `schatten:p`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "frobenius" | "f" => return Ok(NormKind::Frobenius),
            "hilbert-schmidt" | "hs" => return Ok(NormKind::HilbertSchmidt),
            "operator" | "op" => return Ok(NormKind::Operator),
            _ => {}
        }
        let p = t
            .strip_prefix("schatten")
            .map(|r| r.trim_start_matches([':', '(']).trim_end_matches(')'))
            .and_then(|r| r.parse::<f64>().ok())
            .ok_or_else(|| Error::InvalidInput(format!("unknown norm `{s}`")))?;
        if !(p > 0.0) || !p.is_finite() {
            return Err(Error::InvalidInput(format!("schatten exponent must be positive, got {p}")));
        }
        Ok(NormKind::Schatten(p))
    }
}

impl Serialize for NormKind {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn frobenius(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn singular_values(a: &CMatrix) -> Vec<f64> {
    a.clone().singular_values().iter().copied().collect()
}

pub fn matrix_norm(a: &CMatrix, kind: NormKind) -> f64 {
    assert!(a.is_square(), "matrix_norm needs a square matrix");
    let n = a.nrows();
    if n == 0 {
        return 0.0;
    }
    match kind {
        NormKind::Frobenius => frobenius(a),
        NormKind::HilbertSchmidt => frobenius(a) / (n as f64).sqrt(),
        NormKind::Operator => singular_values(a).into_iter().fold(0.0, f64::max),
        NormKind::Schatten(p) => {
            let s = singular_values(a);
            let top = s.iter().copied().fold(0.0, f64::max);
            if top == 0.0 {
                return 0.0;
            }
            // scaled to keep large p from overflowing
            top * s.iter().map(|&x| (x / top).powf(p)).sum::<f64>().powf(1.0 / p)
        }
    }
}
