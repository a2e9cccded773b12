//! The two applications: integral reduction and difference scheme generation.

mod reduction;
mod scheme;

pub use reduction::{
    apply_patterns, reduce_to_masters, residue_class_basis, ReductionReport, VanishingPattern,
};
pub use scheme::{
    build_integral_relations, discretize, generate_scheme, Axis, ConservationPDE, ContourSpec,
    GridSpec, IntegralRelation, PdeFile, Quadrature, QuadratureFile, QuadraturePlan, SchemeProblem,
};
