//! Janet division, involutive completion and normal forms.

mod basis;
mod completion;
pub(crate) mod reduce;

pub use basis::{janet_partition, MarkedBasis, MarkedElement};
pub use completion::{janet_basis, janet_basis_with, JanetOptions};
