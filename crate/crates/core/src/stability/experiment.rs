//! Seeded batches of perturbation experiments.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::alpha::irreducibles;
use super::norms::{CMatrix, NormKind};
use super::solver::{perturbation_solve, SolverConfig};
use super::tuple::{commutator_presentation, perturb, random_unitary, voiculescu_pair, UnitaryTuple};
use crate::catalog;
use crate::error::{Error, Result};
use crate::fp::presentation::Presentation;
use crate::fp::table::GroupTable;
use crate::par::{self, Execution};

#[derive(Clone, Debug, PartialEq)]
pub enum ExperimentGroup {
    /// A finite group from the bundled catalog.
    Catalog(String),
    /// `⟨a,b | [a,b]⟩`, perturbing commuting pairs.
    FreeAbelian2,
    /// `⟨a,b | [a,b]⟩` started at the Voiculescu pair, unperturbed.
    Voiculescu,
}

impl fmt::Display for ExperimentGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExperimentGroup::Catalog(name) => f.write_str(name),
            ExperimentGroup::FreeAbelian2 => f.write_str("Z^2"),
            ExperimentGroup::Voiculescu => f.write_str("voiculescu"),
        }
    }
}

impl Serialize for ExperimentGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for ExperimentGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "Z^2" | "ZxZ" | "free-abelian-2" => ExperimentGroup::FreeAbelian2,
            "voiculescu" => ExperimentGroup::Voiculescu,
            name => {
                catalog::group(name)?;
                ExperimentGroup::Catalog(name.to_string())
            }
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub n: usize,
    pub delta: f64,
    pub norm: NormKind,
    pub iterations: usize,
    pub tolerance: f64,
    pub runs: usize,
    pub group: ExperimentGroup,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            seed: 0,
            n: 3,
            delta: 1e-3,
            norm: NormKind::Frobenius,
            iterations: SolverConfig::default().max_iterations,
            tolerance: SolverConfig::default().tolerance,
            runs: 1,
            group: ExperimentGroup::Catalog("Z3".into()),
        }
    }
}

impl ExperimentConfig {
    /// Reads `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = ExperimentConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { line: i + 1, msg };
            let (key, value) = line.split_once('=').ok_or_else(|| err(format!("expected key = value, got `{line}`")))?;
            let value = value.trim();
            let bad = || err(format!("bad value `{value}` for `{}`", key.trim()));
            match key.trim() {
                "seed" => cfg.seed = value.parse().map_err(|_| bad())?,
                "n" => cfg.n = value.parse().map_err(|_| bad())?,
                "delta" => cfg.delta = value.parse().map_err(|_| bad())?,
                "iterations" => cfg.iterations = value.parse().map_err(|_| bad())?,
                "tolerance" => cfg.tolerance = value.parse().map_err(|_| bad())?,
                "runs" => cfg.runs = value.parse().map_err(|_| bad())?,
                "norm" => cfg.norm = value.parse().map_err(|e: Error| err(e.to_string()))?,
                "group" => cfg.group = value.parse().map_err(|e: Error| err(e.to_string()))?,
                other => return Err(err(format!("unknown key `{other}`"))),
            }
        }
        if cfg.n == 0 || !(cfg.delta >= 0.0) || !(cfg.tolerance > 0.0) {
            return Err(Error::InvalidInput("n must be positive, delta nonnegative and tolerance positive".into()));
        }
        Ok(cfg)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentRow {
    pub n: usize,
    pub norm: NormKind,
    pub initial_defect: f64,
    pub final_defect: f64,
    pub distance_moved: f64,
    pub iterations: usize,
    pub converged: bool,
    pub seed: u64,
}

/// A random `n`-dimensional representation: a sum of irreducibles (or of
/// commuting phases for `Z^2`), conjugated by a random unitary.
pub fn genuine_representation(group: &ExperimentGroup, n: usize, seed: u64) -> Result<(Presentation, UnitaryTuple)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = random_unitary(n, &mut rng);
    match group {
        ExperimentGroup::Voiculescu => Ok((commutator_presentation(), voiculescu_pair(n)?)),
        ExperimentGroup::FreeAbelian2 => {
            let mut phases = || {
                CMatrix::from_diagonal(&nalgebra::DVector::from_fn(n, |_, _| {
                    Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU))
                }))
            };
            let (a, b) = (phases(), phases());
            let t = UnitaryTuple::new(vec![&v * a * v.adjoint(), &v * b * v.adjoint()])?;
            Ok((commutator_presentation(), t))
        }
        ExperimentGroup::Catalog(name) => {
            let g = catalog::group(name)?;
            Ok((g.presentation.clone(), table_representation(&g.table, n, seed)?))
        }
    }
}

/// A random `n`-dimensional representation of a finite group on its table
/// generators: random irreducibles stacked diagonally, then conjugated.
pub fn table_representation(g: &GroupTable, n: usize, seed: u64) -> Result<UnitaryTuple> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v = random_unitary(n, &mut rng);
    let irr = irreducibles(g, seed)?;
    let gens = g.generators();
    let mut blocks: Vec<CMatrix> = vec![CMatrix::zeros(n, n); gens.len()];
    let mut filled = 0;
    while filled < n {
        let fits: Vec<_> = irr.iter().filter(|p| p.dimension <= n - filled).collect();
        let p = fits[rng.gen_range(0..fits.len())];
        for (b, &x) in blocks.iter_mut().zip(gens) {
            b.view_mut((filled, filled), (p.dimension, p.dimension)).copy_from(&p.matrices[x]);
        }
        filled += p.dimension;
    }
    UnitaryTuple::new(blocks.iter().map(|b| &v * b * v.adjoint()).collect())
}

/// `perturb` with a generator derived from `seed`, independent of the one
/// that built the representation.
pub fn perturbed(t: &UnitaryTuple, delta: f64, seed: u64) -> UnitaryTuple {
    perturb(t, delta, &mut ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15))
}

/// Runs `cfg.runs` experiments with seeds `cfg.seed, cfg.seed + 1, …`.
pub fn run_experiment(cfg: &ExperimentConfig, exec: Execution) -> Result<Vec<ExperimentRow>> {
    let rows = par::map_range(exec, cfg.runs, |i| -> Result<ExperimentRow> {
        let seed = cfg.seed + i as u64;
        let (p, exact) = genuine_representation(&cfg.group, cfg.n, seed)?;
        let start = if cfg.group == ExperimentGroup::Voiculescu {
            exact
        } else {
            perturbed(&exact, cfg.delta, seed)
        };
        let solver = SolverConfig { max_iterations: cfg.iterations, tolerance: cfg.tolerance, seed, ..SolverConfig::default() };
        let r = perturbation_solve(&p, &start, cfg.norm, &solver)?;
        Ok(ExperimentRow {
            n: cfg.n,
            norm: cfg.norm,
            initial_defect: r.initial.max,
            final_defect: r.final_defect.max,
            distance_moved: r.max_distance(),
            iterations: r.iterations,
            converged: r.converged,
            seed,
        })
    });
    rows.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_config() {
        let cfg = ExperimentConfig::parse("seed = 7\nn=4 # dim\nnorm = operator\ngroup = S3\nruns = 2\n").unwrap();
        assert_eq!((cfg.seed, cfg.n, cfg.runs), (7, 4, 2));
        assert_eq!(cfg.norm, NormKind::Operator);
        assert_eq!(cfg.group, ExperimentGroup::Catalog("S3".into()));
        assert!(matches!(ExperimentConfig::parse("n = x"), Err(Error::Parse { line: 1, .. })));
        assert!(ExperimentConfig::parse("colour = red").is_err());
    }

    #[test]
    fn genuine_representations_are_exact() {
        for g in ["Z3", "S3", "Z^2"] {
            let group: ExperimentGroup = g.parse().unwrap();
            let (p, t) = genuine_representation(&group, 7, 1).unwrap();
            assert_eq!(t.dimension(), 7);
            assert!(super::super::defect(&p, &t, NormKind::Frobenius).unwrap().max < 1e-12);
        }
    }
}
