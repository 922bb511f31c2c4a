//! Immutable indexed tensor expressions with exact rational coefficients and
//! canonical forms.
//!
//! A [`Monomial`] is a product of component symbols (Kronecker delta, the two
//! input fields, their first partial derivatives, and connection symbols)
//! with named abstract indices; an [`Expression`] is a rational-linear
//! combination of canonical monomials. Equality of expressions is decided by
//! comparing canonical term maps, which makes the term collections appearing
//! in the classification proofs exact and mechanical.

mod build;
mod expression;
mod factor;
mod index;
mod json;
mod monomial;
mod reduce;
mod render;

pub use build::Ctx;
pub use expression::{Expression, Variance};
pub use factor::{Factor, Head};
pub use index::IndexName;
pub use json::{expression_from_json, expression_to_json, ExprJson};
pub use monomial::{canonicalize, derivative_count, substitute_delta, Monomial, MonoKey, MonoKeySet};
pub use reduce::{apply_reduction, InputReduction};
pub use render::{render_expression, render_monomial, Shape};
