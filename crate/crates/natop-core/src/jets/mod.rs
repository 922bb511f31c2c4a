//! Exact numeric verification layer: polynomial tensor fields, polynomial
//! diffeomorphism jets, pullbacks, and randomized naturality certification
//! with exact rational arithmetic (pass criterion is literal equality).
//!
//! This oracle never consults the auxiliary-connection machinery; agreement
//! between the two is itself one of the cross-checks of the test suite.

mod check;
mod eval;
mod field;
mod poly;

pub use check::{
    check_naturality, check_naturality_many, check_pure_case, FieldClass, NatConfig,
    NatReport, Witness,
};
pub use eval::{evaluate, evaluate_as_field, evaluate_with_jets, FieldJet, Table};
pub use field::{gl_pullback, pullback, random_gl, DiffeoJet, PolyField};
pub use poly::Poly;

#[cfg(test)]
mod tests;
