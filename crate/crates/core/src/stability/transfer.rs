//! Transfer of a near-representation of `Γ/N` through a representation of
//! `Γ`, for a finite normal subgroup `N`.

use serde::Serialize;

use super::alpha::alpha_threshold_seeded;
use super::norms::{frobenius, CMatrix, NormKind};
use super::solver::{perturbation_solve, SolveReport, SolverConfig};
use super::tuple::{arity, word_defects, UnitaryTuple};
use crate::error::{Error, Result};
use crate::fp::coset::group_table;
use crate::fp::presentation::Presentation;
use crate::fp::word::Word;

const MAX_COSETS: usize = 100_000;
/// `ρ′(n)` counts as the identity below this Frobenius distance.
pub const KERNEL_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Debug, Serialize)]
pub struct TransferReport {
    pub normal_order: usize,
    pub alpha: f64,
    /// Frobenius defect of `t` on the words generating `N`.
    pub n_defects: Vec<f64>,
    /// `max_{n∈N} ‖t(n) − I‖_F`.
    pub delta: f64,
    /// `max_{n∈N} ‖ρ′(n) − t(n)‖_F`.
    pub epsilon: f64,
    /// `max_{n∈N} ‖ρ′(n) − I‖_F`.
    pub kernel_defect: f64,
    pub kills_normal_subgroup: bool,
    /// Frobenius defect of `ρ′` on the relators of `Γ/N`.
    pub quotient_defect: f64,
    pub distance_to_t: Vec<f64>,
    pub solve: SolveReport,
    #[serde(skip)]
    pub representation: Option<UnitaryTuple>,
    pub seed: u64,
}

pub fn quotient_transfer_experiment(
    p: &Presentation,
    n_words: &[Word],
    t: &UnitaryTuple,
    cfg: &SolverConfig,
) -> Result<TransferReport> {
    arity(p, t)?;
    let gamma = group_table(p, MAX_COSETS)?;
    let images: Vec<usize> = n_words.iter().map(|w| gamma.evaluate(w, gamma.generators())).collect();
    let normal = gamma.generated_subgroup(&images);
    if !gamma.is_normal(&normal) {
        return Err(Error::InvalidInput("the words do not generate a normal subgroup".into()));
    }
    let (n_table, _) = gamma.subgroup_table(&normal)?;
    let alpha = alpha_threshold_seeded(&n_table, cfg.seed)?;

    let n_defects = word_defects(n_words, t, NormKind::Frobenius).per_relator;
    let worst = n_defects.iter().copied().fold(0.0, f64::max);
    if worst > alpha / 2.0 {
        return Err(Error::ThresholdViolation(format!("defect {worst:.3e} on N exceeds α/2 = {:.3e}", alpha / 2.0)));
    }

    let solve = perturbation_solve(p, t, NormKind::Frobenius, cfg)?;
    let words = gamma.element_words()?;
    let rho = &solve.tuple;
    let (mut delta, mut epsilon, mut kernel_defect) = (0.0f64, 0.0f64, 0.0f64);
    let id = CMatrix::identity(t.dimension(), t.dimension());
    for &x in &normal {
        let (tn, rn) = (t.evaluate(&words[x]), rho.evaluate(&words[x]));
        delta = delta.max(frobenius(&(&tn - &id)));
        epsilon = epsilon.max(frobenius(&(&rn - &tn)));
        kernel_defect = kernel_defect.max(frobenius(&(&rn - &id)));
    }
    if epsilon + delta > alpha {
        return Err(Error::ThresholdViolation(format!("ε + δ = {:.3e} exceeds α = {alpha:.3e}", epsilon + delta)));
    }
    // below α no nontrivial irreducible of N can occur in ρ′|N
    let kills = solve.converged && kernel_defect < alpha && kernel_defect <= KERNEL_TOLERANCE;
    let quotient_relators: Vec<Word> = p.relators().iter().chain(n_words).cloned().collect();
    let quotient_defect = word_defects(&quotient_relators, rho, NormKind::Frobenius).max;
    Ok(TransferReport {
        normal_order: normal.len(),
        alpha,
        n_defects,
        delta,
        epsilon,
        kernel_defect,
        kills_normal_subgroup: kills,
        quotient_defect,
        distance_to_t: rho.distances(t, NormKind::Frobenius),
        representation: kills.then(|| rho.clone()),
        seed: cfg.seed,
        solve,
    })
}
