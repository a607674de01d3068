//! Cohomology and homology of finite groups with trivial coefficients.

pub mod bar;
pub mod cochain;
pub mod cohomology;
pub mod hopf;
pub mod modular;
pub mod solve;
pub mod module;
pub mod uct;

pub use cochain::Cochain;
pub use cohomology::{cohomology, CohomologyGroup};
pub use hopf::{schur_multiplier, HopfData};
pub use module::CoefficientModule;
pub use uct::{uct_sequence, UctSequence};
