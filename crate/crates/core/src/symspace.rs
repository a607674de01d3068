//! Rational cohomology of compact dual symmetric spaces, kept as
//! Poincaré polynomials, and the even-degree test that decides operator
//! instability of cocompact lattices.

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};

pub const SYMSPACES_TEXT: &str = include_str!("../../../data/symspaces.txt");

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PoincarePolynomial(pub Vec<u64>);

impl PoincarePolynomial {
    pub fn one() -> Self {
        PoincarePolynomial(vec![1])
    }

    /// `1 + t^n`.
    pub fn sphere(n: usize) -> Self {
        let mut c = vec![0; n + 1];
        c[0] += 1;
        c[n] += 1;
        PoincarePolynomial(c)
    }

    /// `∏ (1 + t^d)`.
    pub fn exterior(degrees: &[usize]) -> Self {
        degrees.iter().fold(Self::one(), |p, &d| p.mul(&Self::sphere(d)))
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.0
    }

    pub fn coefficient(&self, i: usize) -> u64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().rposition(|&c| c != 0).unwrap_or(0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut c = vec![0u64; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in other.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        PoincarePolynomial(c).trimmed()
    }

    fn trimmed(mut self) -> Self {
        self.0.truncate(self.degree() + 1);
        self
    }

    pub fn is_palindromic(&self) -> bool {
        let c = &self.0[..=self.degree()];
        c.iter().eq(c.iter().rev())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.0.iter().enumerate().map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
    }

    /// Positive even degrees with a nonzero coefficient.
    pub fn even_degrees(&self) -> Vec<usize> {
        (2..=self.degree()).step_by(2).filter(|&i| self.coefficient(i) != 0).collect()
    }
}

impl fmt::Display for PoincarePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "t".into(),
                (1, c) => format!("{c}t"),
                (i, 1) => format!("t^{i}"),
                (i, c) => format!("{c}t^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

pub fn kunneth_product(p: &PoincarePolynomial, q: &PoincarePolynomial) -> PoincarePolynomial {
    p.mul(q)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "data", rename_all = "snake_case")]
pub enum CohomologySpec {
    Sphere(usize),
    Exterior(Vec<usize>),
    Explicit(Vec<u64>),
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetricSpaceEntry {
    pub name: String,
    /// Label of the noncompact group, e.g. `SL3(R)` or `SO(5,1)`.
    pub group: String,
    pub dimension: usize,
    pub spec: CohomologySpec,
}

impl SymmetricSpaceEntry {
    pub fn poincare_polynomial(&self) -> PoincarePolynomial {
        match &self.spec {
            CohomologySpec::Sphere(n) => PoincarePolynomial::sphere(*n),
            CohomologySpec::Exterior(d) => PoincarePolynomial::exterior(d),
            CohomologySpec::Explicit(c) => PoincarePolynomial(c.clone()).trimmed(),
        }
    }
}

/// Dimension of the dual space predicted from the group label, for the
/// families in the catalog.
pub fn expected_dimension(group: &str) -> Option<usize> {
    let num = |s: &str| s.parse::<usize>().ok();
    if let Some(rest) = group.strip_prefix("SO(").and_then(|s| s.strip_suffix(",1)")) {
        return num(rest);
    }
    if let Some(rest) = group.strip_prefix("SU(").and_then(|s| s.strip_suffix(')')) {
        let (p, q) = rest.split_once(',')?;
        return Some(2 * num(p)? * num(q)?);
    }
    if let Some(n) = group.strip_prefix("SL").and_then(|s| s.strip_suffix("(R)")).and_then(num) {
        return Some((n - 1) * (n + 2) / 2);
    }
    if let Some(n) = group.strip_prefix("SL").and_then(|s| s.strip_suffix("(C)")).and_then(num) {
        return Some(n * n - 1);
    }
    if let Some(n) = group.strip_prefix("SL").and_then(|s| s.strip_suffix("(H)")).and_then(num) {
        return Some((n - 1) * (2 * n + 1));
    }
    if let Some(n) = group.strip_prefix("Sp").and_then(|s| s.strip_suffix("(R)")).and_then(num) {
        let g = n / 2;
        return Some(g * (g + 1));
    }
    None
}

fn parse_list<T: std::str::FromStr>(s: &str, line: usize) -> Result<Vec<T>> {
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| Error::Parse { line, msg: format!("bad list entry `{x}`") }))
        .collect()
}

fn validate(e: &SymmetricSpaceEntry, chi: Option<i64>, line: usize) -> Result<()> {
    let fail = |msg: String| Err(Error::Parse { line, msg: format!("{}: {msg}", e.name) });
    let p = e.poincare_polynomial();
    match &e.spec {
        CohomologySpec::Sphere(n) if *n != e.dimension => return fail(format!("sphere {n} has dimension {n}")),
        CohomologySpec::Exterior(d) if d.iter().sum::<usize>() != e.dimension => {
            return fail("generator degrees do not sum to the dimension".into())
        }
        _ => {}
    }
    if p.coefficient(0) != 1 {
        return fail("H^0 must be one-dimensional".into());
    }
    if p.degree() != e.dimension {
        return fail(format!("top degree {} differs from dimension {}", p.degree(), e.dimension));
    }
    if !p.is_palindromic() {
        return Err(Error::DualityViolation(format!("{}: {p}", e.name)));
    }
    if let Some(chi) = chi {
        if p.euler_characteristic() != chi {
            return fail(format!("Euler characteristic {} but {chi} recorded", p.euler_characteristic()));
        }
    }
    if let Some(d) = expected_dimension(&e.group) {
        if d != e.dimension {
            return fail(format!("{} has a dual of dimension {d}", e.group));
        }
    }
    Ok(())
}

pub fn parse_catalog(text: &str) -> Result<Vec<SymmetricSpaceEntry>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let text = raw.split('#').next().unwrap().trim();
        if text.is_empty() {
            continue;
        }
        let f: Vec<&str> = text.split_whitespace().collect();
        if f.len() < 5 {
            return Err(Error::Parse { line, msg: "expected `name group dimension kind data`".into() });
        }
        let dimension = f[2].parse().map_err(|_| Error::Parse { line, msg: format!("bad dimension `{}`", f[2]) })?;
        let spec = match f[3] {
            "sphere" => CohomologySpec::Sphere(
                f[4].parse().map_err(|_| Error::Parse { line, msg: format!("bad sphere `{}`", f[4]) })?,
            ),
            "exterior" => CohomologySpec::Exterior(parse_list(f[4], line)?),
            "poly" => CohomologySpec::Explicit(parse_list(f[4], line)?),
            k => return Err(Error::Parse { line, msg: format!("unknown kind `{k}`") }),
        };
        let mut chi = None;
        for extra in &f[5..] {
            match extra.strip_prefix("chi=") {
                Some(v) => chi = Some(v.parse().map_err(|_| Error::Parse { line, msg: format!("bad `{extra}`") })?),
                None => return Err(Error::Parse { line, msg: format!("unexpected field `{extra}`") }),
            }
        }
        let entry = SymmetricSpaceEntry { name: f[0].to_string(), group: f[1].to_string(), dimension, spec };
        validate(&entry, chi, line)?;
        out.push(entry);
    }
    Ok(out)
}

pub fn catalog() -> Result<&'static [SymmetricSpaceEntry]> {
    static CACHE: OnceLock<Result<Vec<SymmetricSpaceEntry>>> = OnceLock::new();
    CACHE.get_or_init(|| parse_catalog(SYMSPACES_TEXT)).as_ref().map(Vec::as_slice).map_err(Clone::clone)
}

/// Looks an entry up by space name or group label.
pub fn entry(name: &str) -> Result<&'static SymmetricSpaceEntry> {
    catalog()?
        .iter()
        .find(|e| e.name == name || e.group == name)
        .ok_or_else(|| Error::UnknownEntry(name.to_string()))
}

pub fn poincare_polynomial(name: &str) -> Result<PoincarePolynomial> {
    Ok(entry(name)?.poincare_polynomial())
}

/// True iff `dim` is odd and `p = 1 + t^dim`. Also checks that this agrees
/// with the vanishing of every even positive coefficient.
pub fn is_odd_rational_homology_sphere(p: &PoincarePolynomial, dim: usize) -> Result<bool> {
    if p.degree() != dim || !p.is_palindromic() {
        return Err(Error::DualityViolation(format!("{p} is not palindromic of degree {dim}")));
    }
    let verdict = dim % 2 == 1 && *p == PoincarePolynomial::sphere(dim);
    let by_even = p.even_degrees().is_empty();
    if verdict != by_even {
        return Err(Error::DualityViolation(format!("{p}: even-degree test disagrees with the sphere test")));
    }
    Ok(verdict)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    NotOperatorStable,
    Exception,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictReport {
    pub factors: Vec<String>,
    pub groups: Vec<String>,
    pub dimension: usize,
    pub poincare: Vec<u64>,
    pub poincare_text: String,
    pub even_degrees: Vec<usize>,
    pub verdict: Verdict,
    pub reasoning: String,
}

pub fn instability_verdict(factors: &[&str]) -> Result<VerdictReport> {
    let entries: Vec<&SymmetricSpaceEntry> = factors.iter().map(|f| entry(f)).collect::<Result<_>>()?;
    let p = entries.iter().fold(PoincarePolynomial::one(), |acc, e| kunneth_product(&acc, &e.poincare_polynomial()));
    let dimension = entries.iter().map(|e| e.dimension).sum();
    let even_degrees = p.even_degrees();
    let (verdict, reasoning) = match even_degrees.first() {
        Some(d) => (
            Verdict::NotOperatorStable,
            format!(
                "compact dual has a nonzero rational class in even degree {d}; restriction to a cocompact lattice \
                 is injective there, so the lattice has an even-degree class and fails operator stability"
            ),
        ),
        None => (
            Verdict::Exception,
            "the dual symmetric space is an odd-dimensional rational homology sphere, so no even-degree class is \
             available and the criterion gives no conclusion"
                .to_string(),
        ),
    };
    Ok(VerdictReport {
        factors: entries.iter().map(|e| e.name.clone()).collect(),
        groups: entries.iter().map(|e| e.group.clone()).collect(),
        dimension,
        poincare_text: p.to_string(),
        poincare: p.0,
        even_degrees,
        verdict,
        reasoning,
    })
}
