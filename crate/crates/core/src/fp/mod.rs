//! Words, presentations, coset enumeration and integer linear algebra.

pub mod abelian;
pub mod coset;
pub mod parse;
pub mod presentation;
pub mod schreier;
pub mod smith;
pub mod table;
pub mod word;

pub use abelian::{abelianization, AbelianGroup};
pub use coset::{coset_enumerate, enumerate_cosets, group_table, CosetTable, Enumeration};
pub use parse::{parse_presentation, parse_presentations};
pub use presentation::Presentation;
pub use schreier::reidemeister_schreier;
pub use smith::{smith_normal_form, IntegerMatrix, SmithForm};
pub use table::GroupTable;
pub use word::{Letter, Word};
