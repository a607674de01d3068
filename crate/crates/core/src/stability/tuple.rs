use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use super::norms::{matrix_norm, CMatrix, NormKind};
use crate::error::{Error, Result};
use crate::fp::presentation::Presentation;
use crate::fp::table::GroupTable;
use crate::fp::word::Word;

pub const UNITARY_TOLERANCE: f64 = 1e-12;

/// One unitary matrix per generator of a presentation.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryTuple {
    n: usize,
    matrices: Vec<CMatrix>,
}

pub fn unitarity_error(u: &CMatrix) -> f64 {
    let n = u.nrows();
    super::norms::frobenius(&(u.adjoint() * u - CMatrix::identity(n, n)))
}

impl UnitaryTuple {
    pub fn new(matrices: Vec<CMatrix>) -> Result<Self> {
        let n = matrices.first().map_or(0, |m| m.nrows());
        for (i, m) in matrices.iter().enumerate() {
            if m.nrows() != n || m.ncols() != n {
                return Err(Error::DimensionMismatch(format!("matrix {i} is {}x{}, expected {n}x{n}", m.nrows(), m.ncols())));
            }
            let err = unitarity_error(m);
            if err > UNITARY_TOLERANCE {
                return Err(Error::InvalidInput(format!("matrix {i} is not unitary (error {err:.3e})")));
            }
        }
        Ok(UnitaryTuple { n, matrices })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    /// The image of a word; inverse letters use the adjoint.
    pub fn evaluate(&self, w: &Word) -> CMatrix {
        let adj: Vec<CMatrix> = self.matrices.iter().map(|m| m.adjoint()).collect();
        w.evaluate(CMatrix::identity(self.n, self.n), &self.matrices, &adj, |a, b| a * b)
    }

    /// Generator-wise direct sum.
    pub fn direct_sum(&self, other: &UnitaryTuple) -> Result<UnitaryTuple> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch("direct sum of tuples of different lengths".into()));
        }
        let (n, m) = (self.n, other.n);
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| {
                let mut c = CMatrix::zeros(n + m, n + m);
                c.view_mut((0, 0), (n, n)).copy_from(a);
                c.view_mut((n, n), (m, m)).copy_from(b);
                c
            })
            .collect();
        Ok(UnitaryTuple { n: n + m, matrices })
    }

    /// `V* U_i V` for a unitary change of basis `V`.
    pub fn conjugated(&self, v: &CMatrix) -> Result<UnitaryTuple> {
        UnitaryTuple::new(self.matrices.iter().map(|u| v.adjoint() * u * v).collect())
    }

    /// Generator-wise distances in the given norm.
    pub fn distances(&self, other: &UnitaryTuple, kind: NormKind) -> Vec<f64> {
        self.matrices.iter().zip(&other.matrices).map(|(a, b)| matrix_norm(&(a - b), kind)).collect()
    }

    pub(crate) fn from_raw(n: usize, matrices: Vec<CMatrix>) -> Self {
        UnitaryTuple { n, matrices }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DefectReport {
    pub norm: NormKind,
    pub per_relator: Vec<f64>,
    pub max: f64,
}

impl DefectReport {
    pub fn is_representation(&self, tol: f64) -> bool {
        self.max <= tol
    }
}

fn check_arity(p: &Presentation, t: &UnitaryTuple) -> Result<()> {
    if p.generator_count() != t.len() {
        return Err(Error::DimensionMismatch(format!(
            "presentation has {} generators, tuple has {} matrices",
            p.generator_count(),
            t.len()
        )));
    }
    Ok(())
}

/// `‖ρ(w) − I‖` for each word.
pub fn word_defects(words: &[Word], t: &UnitaryTuple, kind: NormKind) -> DefectReport {
    let id = CMatrix::identity(t.n, t.n);
    let per_relator: Vec<f64> = words.iter().map(|w| matrix_norm(&(t.evaluate(w) - &id), kind)).collect();
    let max = per_relator.iter().copied().fold(0.0, f64::max);
    DefectReport { norm: kind, per_relator, max }
}

pub fn defect(p: &Presentation, t: &UnitaryTuple, kind: NormKind) -> Result<DefectReport> {
    check_arity(p, t)?;
    Ok(word_defects(p.relators(), t, kind))
}

pub(crate) fn arity(p: &Presentation, t: &UnitaryTuple) -> Result<()> {
    check_arity(p, t)
}

/// Shift and clock matrices for `⟨a,b | [a,b]⟩`.
pub fn voiculescu_pair(n: usize) -> Result<UnitaryTuple> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("Voiculescu pair needs n >= 2, got {n}")));
    }
    let mut shift = CMatrix::zeros(n, n);
    for j in 0..n {
        shift[((j + 1) % n, j)] = Complex64::new(1.0, 0.0);
    }
    let clock = CMatrix::from_diagonal(&nalgebra::DVector::from_fn(n, |j, _| {
        Complex64::from_polar(1.0, 2.0 * PI * j as f64 / n as f64)
    }));
    UnitaryTuple::new(vec![shift, clock])
}

pub fn commutator_presentation() -> Presentation {
    Presentation::from_signed("Z2", &["a", "b"], &[&[1, 2, -1, -2]]).expect("static presentation")
}

/// Left regular representation of a finite group: `L_g e_h = e_{gh}`.
pub fn regular_matrix(g: &GroupTable, x: usize) -> CMatrix {
    let n = g.order();
    let mut m = CMatrix::zeros(n, n);
    for h in 0..n {
        m[(g.mul(x, h), h)] = Complex64::new(1.0, 0.0);
    }
    m
}

/// The regular representation on the table's generators.
pub fn regular_representation(g: &GroupTable) -> UnitaryTuple {
    UnitaryTuple::from_raw(g.order(), g.generators().iter().map(|&x| regular_matrix(g, x)).collect())
}

pub fn random_complex<R: Rng>(n: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(n, n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

/// Anti-Hermitian with Frobenius norm 1.
pub fn random_anti_hermitian<R: Rng>(n: usize, rng: &mut R) -> CMatrix {
    let g = random_complex(n, rng);
    let k = (&g - g.adjoint()) * Complex64::new(0.5, 0.0);
    let norm = super::norms::frobenius(&k);
    k / Complex64::new(norm, 0.0)
}

pub fn random_hermitian<R: Rng>(n: usize, rng: &mut R) -> CMatrix {
    let g = random_complex(n, rng);
    (&g + g.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Unitary factor of a QR decomposition of a random matrix.
pub fn random_unitary<R: Rng>(n: usize, rng: &mut R) -> CMatrix {
    polar_unitary(&random_complex(n, rng))
}

/// The unitary factor `W V*` of `A = W Σ V*`.
pub fn polar_unitary(a: &CMatrix) -> CMatrix {
    let svd = a.clone().svd(true, true);
    svd.u.expect("requested") * svd.v_t.expect("requested")
}

/// Multiplies every generator on the right by `exp(δK)` with an independent
/// random anti-Hermitian `K` of Frobenius norm 1.
pub fn perturb<R: Rng>(t: &UnitaryTuple, delta: f64, rng: &mut R) -> UnitaryTuple {
    let matrices = t
        .matrices
        .iter()
        .map(|u| {
            let k = random_anti_hermitian(t.n, rng) * Complex64::new(delta, 0.0);
            polar_unitary(&(u * k.exp()))
        })
        .collect();
    UnitaryTuple::from_raw(t.n, matrices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn regular_rep_of_z3_is_exact() {
        let g = &catalog::group("Z3").unwrap();
        let t = UnitaryTuple::new(regular_representation(&g.table).matrices).unwrap();
        let d = defect(&g.presentation, &t, NormKind::Frobenius).unwrap();
        assert!(d.max <= 1e-12);
    }

    #[test]
    fn voiculescu_n2() {
        let t = voiculescu_pair(2).unwrap();
        let d = defect(&commutator_presentation(), &t, NormKind::Operator).unwrap();
        assert!((d.max - 2.0).abs() < 1e-12);
    }

    #[test]
    fn arity_mismatch() {
        let t = voiculescu_pair(3).unwrap();
        let p = Presentation::from_signed("Z3", &["a"], &[&[1, 1, 1]]).unwrap();
        assert!(matches!(defect(&p, &t, NormKind::Frobenius), Err(Error::DimensionMismatch(_))));
    }
}
