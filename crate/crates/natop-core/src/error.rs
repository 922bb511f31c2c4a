use thiserror::Error;

/// Errors surfaced by the symbolic and numeric layers.
#[derive(Debug, Error)]
pub enum EngineError {
    /// Index discipline violated: a dummy appearing once or three times, a
    /// free index appearing twice, or a factor with the wrong arity.
    #[error("malformed monomial: {0}")]
    Malformed(String),

    /// Two expressions with different free-index signatures were combined.
    #[error("free index signature mismatch: {0}")]
    SignatureMismatch(String),

    /// A symmetrization set mixed upper and lower indices.
    #[error("mixed variance in index set {0}")]
    MixedVariance(String),

    /// Covariantization expects exactly one derivative factor.
    #[error("expected exactly one derivative factor, found {0}")]
    DerivativeCount(usize),

    /// Numeric evaluation hit a factor with no numeric meaning (connection
    /// symbols) or a field of the wrong valence.
    #[error("not evaluable: {0}")]
    NotEvaluable(String),

    /// Lookup of an undefined operator, identity, or ansatz id.
    #[error("unknown name: {0}")]
    UnknownName(String),

    /// A symmetry constraint incompatible with the signature.
    #[error("incompatible constraint: {0}")]
    IncompatibleConstraint(String),

    /// A full delta self-contraction produced the formal dimension symbol in
    /// a context that requires plain rational coefficients.
    #[error("formal dimension symbol where rational coefficients are required")]
    DimSymbol,

    /// Order-reduction hypotheses (positivity of all degree weights) fail.
    #[error("hypotheses not satisfied: {0}")]
    Hypotheses(String),

    /// Malformed user input (CLI values, serialized expressions).
    #[error("invalid input: {0}")]
    Invalid(String),
}
