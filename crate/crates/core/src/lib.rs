//! Janet and Groebner bases for systems of linear partial difference
//! equations with rational function coefficients.

pub mod apps;
pub mod diff;
pub mod error;
pub mod frontend;
pub mod janet;
pub mod oracle;
pub mod scalar;

pub use error::{Error, Result};
