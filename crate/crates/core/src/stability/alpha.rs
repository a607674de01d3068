//! Irreducible unitary representations of a small finite group, obtained by
//! splitting the regular representation with group-averaged Hermitian
//! operators, and the threshold `α(N)`.

use nalgebra::SymmetricEigen;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::norms::{frobenius, CMatrix};
use super::tuple::{random_hermitian, regular_matrix};
use crate::error::{Error, Result};
use crate::fp::table::GroupTable;

pub const MAX_ALPHA_ORDER: usize = 64;
const ATTEMPTS: usize = 4;

#[derive(Clone, Debug)]
pub struct Irreducible {
    pub dimension: usize,
    /// Character values indexed by group element.
    pub character: Vec<Complex64>,
    /// The representation on every group element.
    pub matrices: Vec<CMatrix>,
}

impl Irreducible {
    pub fn is_trivial(&self) -> bool {
        self.dimension == 1 && self.character.iter().all(|c| (c - 1.0).norm() < 1e-8)
    }

    /// `max_g ‖π(g) − I‖_F`.
    pub fn max_defect(&self) -> f64 {
        let id = CMatrix::identity(self.dimension, self.dimension);
        self.matrices.iter().map(|m| frobenius(&(m - &id))).fold(0.0, f64::max)
    }
}

fn restrict(rep: &[CMatrix], v: &CMatrix) -> Vec<CMatrix> {
    rep.iter().map(|m| v.adjoint() * m * v).collect()
}

fn average(rep: &[CMatrix], h: &CMatrix) -> CMatrix {
    let mut acc = CMatrix::zeros(h.nrows(), h.ncols());
    for m in rep {
        acc += m * h * m.adjoint();
    }
    acc / Complex64::new(rep.len() as f64, 0.0)
}

/// Eigenvector blocks of a Hermitian matrix, grouped by eigenvalue.
fn eigen_blocks(h: &CMatrix) -> Vec<CMatrix> {
    let eig = SymmetricEigen::new(h.clone());
    let mut idx: Vec<usize> = (0..h.nrows()).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let spread = eig.eigenvalues.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let tol = 1e-7 * (1.0 + spread);
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for &i in &idx {
        match clusters.last_mut() {
            Some(c) if eig.eigenvalues[i] - eig.eigenvalues[*c.last().unwrap()] <= tol => c.push(i),
            _ => clusters.push(vec![i]),
        }
    }
    clusters.into_iter().map(|c| CMatrix::from_columns(&c.iter().map(|&i| eig.eigenvectors.column(i)).collect::<Vec<_>>())).collect()
}

fn invariant(rep: &[CMatrix], w: &CMatrix) -> bool {
    let proj = w * w.adjoint();
    let id = CMatrix::identity(proj.nrows(), proj.nrows());
    rep.iter().all(|m| frobenius(&((&id - &proj) * m * w)) < 1e-8)
}

/// Orthonormal bases of irreducible subspaces of `rep`.
fn split(rep: &[CMatrix], rng: &mut ChaCha8Rng, out: &mut Vec<Vec<CMatrix>>) -> Result<()> {
    let k = rep[0].nrows();
    if k == 1 {
        out.push(rep.to_vec());
        return Ok(());
    }
    for _ in 0..ATTEMPTS {
        let blocks = eigen_blocks(&average(rep, &random_hermitian(k, rng)));
        if blocks.len() == 1 {
            continue;
        }
        if !blocks.iter().all(|w| invariant(rep, w)) {
            continue;
        }
        for w in &blocks {
            split(&restrict(rep, w), rng, out)?;
        }
        return Ok(());
    }
    // every averaged operator was scalar: no invariant splitting exists
    out.push(rep.to_vec());
    Ok(())
}

fn character(rep: &[CMatrix]) -> Vec<Complex64> {
    rep.iter().map(|m| m.trace()).collect()
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum::<Complex64>() / a.len() as f64
}

/// One representative per isomorphism class of irreducibles, checked
/// against `Σ d² = |N|` and the multiplicities in the regular representation.
pub fn irreducibles(n: &GroupTable, seed: u64) -> Result<Vec<Irreducible>> {
    let order = n.order();
    if order > MAX_ALPHA_ORDER {
        return Err(Error::CapExceeded(format!("irreducible decomposition needs |N| <= {MAX_ALPHA_ORDER}, got {order}")));
    }
    let regular: Vec<CMatrix> = (0..order).map(|x| regular_matrix(n, x)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut blocks = Vec::new();
    split(&regular, &mut rng, &mut blocks)?;

    let mut classes: Vec<(Irreducible, usize)> = Vec::new();
    for b in blocks {
        let chi = character(&b);
        let norm = inner(&chi, &chi);
        if (norm.re - 1.0).abs() > 1e-6 {
            return Err(Error::DecompositionFailure(format!("block of dimension {} has character norm {:.6}", b[0].nrows(), norm.re)));
        }
        match classes.iter_mut().find(|(c, _)| chi.iter().zip(&c.character).all(|(x, y)| (x - y).norm() < 1e-6)) {
            Some((_, mult)) => *mult += 1,
            None => classes.push((Irreducible { dimension: b[0].nrows(), character: chi, matrices: b }, 1)),
        }
    }
    let dims: usize = classes.iter().map(|(c, _)| c.dimension * c.dimension).sum();
    if dims != order || classes.iter().any(|(c, m)| c.dimension != *m) {
        return Err(Error::DecompositionFailure(format!("dimension count {dims} != |N| = {order}")));
    }
    Ok(classes.into_iter().map(|(c, _)| c).collect())
}

/// `min_π max_{n∈N} ‖π(n) − I‖_F` over nontrivial irreducibles `π`;
/// infinite for the trivial group.
pub fn alpha_threshold(n: &GroupTable) -> Result<f64> {
    alpha_threshold_seeded(n, 0)
}

pub fn alpha_threshold_seeded(n: &GroupTable, seed: u64) -> Result<f64> {
    Ok(irreducibles(n, seed)?.iter().filter(|p| !p.is_trivial()).map(Irreducible::max_defect).fold(f64::INFINITY, f64::min))
}

#[derive(Clone, Debug, Serialize)]
pub struct AlphaReport {
    pub order: usize,
    pub irreducible_dimensions: Vec<usize>,
    pub alpha: f64,
    pub seed: u64,
}

pub fn alpha_report(n: &GroupTable, seed: u64) -> Result<AlphaReport> {
    let irr = irreducibles(n, seed)?;
    let mut dims: Vec<usize> = irr.iter().map(|p| p.dimension).collect();
    dims.sort_unstable();
    let alpha = irr.iter().filter(|p| !p.is_trivial()).map(Irreducible::max_defect).fold(f64::INFINITY, f64::min);
    Ok(AlphaReport { order: n.order(), irreducible_dimensions: dims, alpha, seed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn table(name: &str) -> GroupTable {
        catalog::group(name).unwrap().table.clone()
    }

    #[test]
    fn cyclic_thresholds() {
        assert!((alpha_threshold(&table("Z2")).unwrap() - 2.0).abs() < 1e-8);
        assert!((alpha_threshold(&table("Z3")).unwrap() - 3f64.sqrt()).abs() < 1e-8);
        assert!((alpha_threshold(&table("Z2xZ2")).unwrap() - 2.0).abs() < 1e-8);
    }

    #[test]
    fn s3_has_dimensions_1_1_2() {
        let r = alpha_report(&table("S3"), 5).unwrap();
        assert_eq!(r.irreducible_dimensions, vec![1, 1, 2]);
    }
}
