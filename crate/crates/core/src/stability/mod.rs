//! Almost-representations into unitary groups: norms, relator defects, a
//! perturbation solver, the threshold `α(N)` and the quotient transfer.

pub mod alpha;
pub mod experiment;
pub mod norms;
pub mod solver;
pub mod transfer;
pub mod tuple;

pub use alpha::{alpha_report, alpha_threshold, alpha_threshold_seeded, irreducibles, AlphaReport, Irreducible};
pub use experiment::{genuine_representation, perturbed, run_experiment, table_representation, ExperimentConfig, ExperimentGroup, ExperimentRow};
pub use norms::{matrix_norm, CMatrix, NormKind};
pub use solver::{perturbation_solve, SolveReport, SolverConfig, StepSchedule};
pub use transfer::{quotient_transfer_experiment, TransferReport};
pub use tuple::{
    commutator_presentation, defect, perturb, regular_representation, voiculescu_pair, DefectReport, UnitaryTuple,
};
