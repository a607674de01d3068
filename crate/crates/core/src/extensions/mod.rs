//! Central extensions: cocycles, pushforward, transgression and the
//! five-term sequence.

pub mod catalog;
pub mod central;
pub mod hom;
pub mod identities;

pub mod pushforward;
pub mod transgression;

pub use central::{cocycle_from_extension, extension_from_cocycle, CentralExtension, Cocycle2};
pub use hom::Hom;
pub use pushforward::{pushforward, pushforward_quotient};
pub use transgression::{five_term_check, transgression, ExactnessReport, Transgression};
