//! Exact arithmetic in the coefficient field Q(variables, parameters).

mod factor;
mod gcd;
mod modgcd;
mod poly;
mod ratfun;
mod symbols;

pub use factor::{factor_poly, factor_ratfun, FactoredPoly, FactoredRatFun};
pub use gcd::{gcd, gcd_many};
pub use poly::{grlex, Exponents, MultiPoly};
pub use ratfun::RatFun;
pub(crate) use symbols::is_identifier;
pub use symbols::SymbolTable;
