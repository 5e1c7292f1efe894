use thiserror::Error;

/// Errors raised by the engine.
///
/// Precondition failures name the hypothesis they violate, so that the CLI
/// can surface them verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("negative exponent at position {pos}")]
    NegativeExponent { pos: usize },

    #[error("variable count mismatch: expected {expected}, found {found}")]
    VarCountMismatch { expected: usize, found: usize },

    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },

    #[error("point has {found} coordinates, expected {expected}")]
    PointLength { expected: usize, found: usize },

    #[error("series {index} is exact only to order {have}, order {needed} requested")]
    SeriesTooShort { index: usize, have: usize, needed: usize },

    #[error("requires ξ(0) ≠ 0: the vector field vanishes at the basepoint")]
    FieldVanishesAtBasepoint,

    #[error("requires S_i(0, 0) ≠ 0: S_{index} vanishes at the basepoint")]
    LeadingCoefficientVanishes { index: usize },

    #[error("bound precondition violated: {0}")]
    BoundPrecondition(&'static str),

    #[error("certification bound {0} is too large to explore")]
    BoundTooLarge(String),

    #[error("internal inconsistency: series method gave {series}, Lie method gave {lie}")]
    MethodMismatch { series: String, lie: String },

    #[error("empty system of vector fields")]
    EmptySystem,

    #[error("max_order must be at least 1")]
    ZeroOrder,

    #[error("shape mismatch: {0}")]
    Shape(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
