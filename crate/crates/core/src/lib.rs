pub mod catalog;

pub mod error;
pub mod extensions;
pub mod extsq;
pub mod fp;
pub mod homology;
pub mod par;
pub mod spectral;
pub mod stability;
pub mod symspace;
pub mod verify;

pub use error::{Error, Result};
