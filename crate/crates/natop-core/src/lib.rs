//! Symbolic engine for classifying natural R-bilinear first-order differential
//! operators that transform a pair of tensor fields (a (1,p) field and an
//! (r,s) field) into an (r, s+p) tensor field.
//!
//! The pipeline is:
//!
//! 1. [`homogeneity`] solves the integer degree equation that pins every
//!    bilinear operator of this shape to order one, with exactly two monomial
//!    shapes (undifferentiated first field times the derivative of the second,
//!    and vice versa).
//! 2. [`ansatz`] enumerates every index-matching monomial of those two shapes,
//!    one unknown coefficient per monomial.
//! 3. [`connection`] rewrites each monomial through an auxiliary symmetric
//!    linear connection and demands independence of the connection symbols,
//!    which yields an exact homogeneous linear system in the unknowns.
//! 4. [`linalg`] reduces that system over the rationals; the nullspace basis
//!    is the space of natural operators.
//! 5. [`catalog`] holds the classically named operators (Lie brackets and
//!    derivatives, exterior-derivative combinations, the Froelicher-Nijenhuis
//!    bracket, the Yano-Ako operators) and matches computed bases against
//!    them, plus a suite of symbolic identities between them.
//! 6. [`jets`] is an independent oracle: it evaluates operators on concrete
//!    polynomial fields and certifies naturality against polynomial
//!    diffeomorphism jets using exact rational arithmetic.
//!
//! All symbolic and numeric arithmetic is exact; no floating point is used
//! anywhere.

pub mod ansatz;
pub mod catalog;
pub mod connection;
pub mod error;
pub mod expr;
pub mod homogeneity;
pub mod jets;
pub mod linalg;
pub mod pipeline;
pub mod signature;

pub use error::EngineError;
pub use signature::TensorSignature;

/// Exact rational scalar used throughout the engine.
pub type Rat = num_rational::BigRational;

/// Convenience constructor for small rational constants.
pub fn rat(n: i64, d: i64) -> Rat {
    use num_bigint::BigInt;
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Convenience constructor for small integer constants.
pub fn rint(n: i64) -> Rat {
    rat(n, 1)
}
