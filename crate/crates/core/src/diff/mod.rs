//! Linear difference polynomials: terms, rankings and the shift action.

mod poly;
mod ranking;
mod term;

pub use poly::DiffPoly;
pub use ranking::{Ranking, RankingKind, TermKey};
pub use term::{unit_shift, DiffTerm, Shift};
