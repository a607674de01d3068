//! Riemannian gradient descent on `U(n)^k` for the Frobenius surrogate
//! `Σ_r ‖ρ(r) − I‖²_F`.

use num_complex::Complex64;
use serde::Serialize;

use super::norms::{frobenius, CMatrix, NormKind};
use super::tuple::{arity, defect, polar_unitary, DefectReport, UnitaryTuple};
use crate::error::{Error, Result};
use crate::fp::presentation::Presentation;
use crate::fp::word::Word;

pub const OBJECTIVE_NOTE: &str = "minimizes the sum of squared Frobenius relator defects; distances use the requested norm";

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum StepSchedule {
    /// Barzilai-Borwein step lengths with Armijo backtracking.
    BarzilaiBorwein,
    /// Fixed initial step with Armijo backtracking.
    Fixed(f64),
}

#[derive(Clone, Debug, Serialize)]
pub struct SolverConfig {
    pub max_iterations: usize,
    pub schedule: StepSchedule,
    /// Target for the maximal Frobenius relator defect.
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig { max_iterations: 20_000, schedule: StepSchedule::BarzilaiBorwein, tolerance: 1e-10, seed: 0 }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let step_ok = match self.schedule {
            StepSchedule::Fixed(s) => s > 0.0 && s.is_finite(),
            StepSchedule::BarzilaiBorwein => true,
        };
        if !(self.tolerance > 0.0) || !step_ok {
            return Err(Error::InvalidInput("solver tolerance and step must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    #[serde(skip)]
    pub tuple: UnitaryTuple,
    pub norm: NormKind,
    pub distance_moved: Vec<f64>,
    pub initial: DefectReport,
    pub final_defect: DefectReport,
    /// Objective value before each iteration and after the last.
    pub trace: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    pub seed: u64,
    pub objective: &'static str,
}

impl SolveReport {
    pub fn max_distance(&self) -> f64 {
        self.distance_moved.iter().copied().fold(0.0, f64::max)
    }
}

fn relator_images(words: &[Word], u: &[CMatrix]) -> Vec<CMatrix> {
    let n = u[0].nrows();
    words
        .iter()
        .map(|w| {
            w.letters().iter().fold(CMatrix::identity(n, n), |acc, l| {
                if l.is_inverse() {
                    acc * u[l.gen()].adjoint()
                } else {
                    acc * &u[l.gen()]
                }
            })
        })
        .collect()
}

fn objective(words: &[Word], u: &[CMatrix]) -> f64 {
    let n = u[0].nrows();
    let id = CMatrix::identity(n, n);
    relator_images(words, u).iter().map(|w| (w - &id).iter().map(|z| z.norm_sqr()).sum::<f64>()).sum()
}

/// Left-trivialized Riemannian gradient: one skew-Hermitian `Ξ_g` per
/// generator, so that moving `U_g -> U_g exp(-tΞ_g)` decreases the objective
/// at rate `Σ‖Ξ_g‖²`.
fn gradient(words: &[Word], u: &[CMatrix]) -> Vec<CMatrix> {
    let n = u[0].nrows();
    let id = CMatrix::identity(n, n);
    let mut e: Vec<CMatrix> = vec![CMatrix::zeros(n, n); u.len()];
    let two = Complex64::new(2.0, 0.0);
    for w in words {
        let factors: Vec<CMatrix> =
            w.letters().iter().map(|l| if l.is_inverse() { u[l.gen()].adjoint() } else { u[l.gen()].clone() }).collect();
        let k = factors.len();
        let mut prefix = Vec::with_capacity(k + 1);
        prefix.push(id.clone());
        for f in &factors {
            let next = prefix.last().unwrap() * f;
            prefix.push(next);
        }
        let mut suffix = vec![id.clone(); k + 1];
        for i in (0..k).rev() {
            suffix[i] = &factors[i] * &suffix[i + 1];
        }
        let d = &prefix[k] - &id;
        for (i, l) in w.letters().iter().enumerate() {
            let (p, s) = (&prefix[i], &suffix[i + 1]);
            if l.is_inverse() {
                e[l.gen()] += s * d.adjoint() * p * two;
            } else {
                e[l.gen()] += p.adjoint() * &d * s.adjoint() * two;
            }
        }
    }
    e.iter()
        .zip(u)
        .map(|(eg, ug)| {
            let m = ug.adjoint() * eg;
            (&m - m.adjoint()) * Complex64::new(0.5, 0.0)
        })
        .collect()
}

fn inner(a: &[CMatrix], b: &[CMatrix]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y.iter()).map(|(p, q)| (p.conj() * q).re).sum::<f64>()).sum()
}

fn retract(u: &[CMatrix], xi: &[CMatrix], t: f64) -> Vec<CMatrix> {
    let n = u[0].nrows();
    let id = CMatrix::identity(n, n);
    u.iter().zip(xi).map(|(ug, x)| polar_unitary(&(ug * (&id - x * Complex64::new(t, 0.0))))).collect()
}

fn max_defect(words: &[Word], u: &[CMatrix]) -> f64 {
    let n = u[0].nrows();
    let id = CMatrix::identity(n, n);
    relator_images(words, u).iter().map(|w| frobenius(&(w - &id))).fold(0.0, f64::max)
}

/// Searches for a genuine representation near `t`. Non-convergence is a
/// status on the report, which then carries the best iterate.
pub fn perturbation_solve(p: &Presentation, t: &UnitaryTuple, kind: NormKind, cfg: &SolverConfig) -> Result<SolveReport> {
    arity(p, t)?;
    cfg.validate()?;
    let initial = defect(p, t, kind)?;
    let words = p.relators();
    let mut u: Vec<CMatrix> = t.matrices().to_vec();
    let mut f = if u.is_empty() { 0.0 } else { objective(words, &u) };
    let mut trace = vec![f];
    let mut iterations = 0;
    let mut converged = u.is_empty() || max_defect(words, &u) <= cfg.tolerance;

    let mut step = match cfg.schedule {
        StepSchedule::Fixed(s) => s,
        StepSchedule::BarzilaiBorwein => 0.1,
    };
    let mut prev: Option<(Vec<CMatrix>, f64)> = None;
    while !converged && iterations < cfg.max_iterations {
        let g = gradient(words, &u);
        let gg = inner(&g, &g);
        if gg == 0.0 {
            break;
        }
        if let (StepSchedule::BarzilaiBorwein, Some((g_prev, t_prev))) = (cfg.schedule, &prev) {
            // s = -t Ξ_prev, y = Ξ - Ξ_prev, step = <s,s>/<s,y>
            let y: Vec<CMatrix> = g.iter().zip(g_prev).map(|(a, b)| a - b).collect();
            let sy = -t_prev * inner(g_prev, &y);
            let ss = t_prev * t_prev * inner(g_prev, g_prev);
            step = if sy > 0.0 { (ss / sy).clamp(1e-8, 1e3) } else { (t_prev * 2.0).min(1e3) };
        }
        let mut t_try = step;
        let accepted = loop {
            let cand = retract(&u, &g, t_try);
            let fc = objective(words, &cand);
            if fc <= f - 1e-4 * t_try * gg {
                break Some((cand, fc));
            }
            t_try *= 0.5;
            if t_try < 1e-14 {
                break None;
            }
        };
        iterations += 1;
        let Some((cand, fc)) = accepted else { break };
        u = cand;
        f = fc;
        trace.push(f);
        prev = Some((g, t_try));
        if let StepSchedule::Fixed(s) = cfg.schedule {
            step = (t_try * 2.0).min(s);
        }
        converged = max_defect(words, &u) <= cfg.tolerance;
    }

    let tuple = UnitaryTuple::from_raw(t.dimension(), u);
    let final_defect = defect(p, &tuple, kind)?;
    let distance_moved = tuple.distances(t, kind);
    Ok(SolveReport {
        tuple,
        norm: kind,
        distance_moved,
        initial,
        final_defect,
        trace,
        iterations,
        converged,
        seed: cfg.seed,
        objective: OBJECTIVE_NOTE,
    })
}
