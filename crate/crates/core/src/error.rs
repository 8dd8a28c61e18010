use thiserror::Error;

use crate::space_measure::Subset;

/// Errors raised while constructing or combining library values.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("a space needs at least one point")]
    EmptySpace,

    #[error("duplicate point label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown point label `{0}`")]
    UnknownLabel(String),

    #[error("space has {0} points; at most {max} are supported", max = crate::space_measure::MAX_POINTS)]
    TooManyPoints(usize),

    #[error("subset index {index} out of range for a space of {size} points")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("operands live on different spaces")]
    SpaceMismatch,

    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("value {value} for `{what}` is not in [0, 1]")]
    OutOfUnitInterval { what: String, value: f64 },

    #[error("full capacity tables are limited to {max} points, got {got}", max = crate::space_measure::MAX_TABLE_POINTS)]
    TableTooLarge { got: usize },

    #[error("capacity table is incomplete: no entry for subset {0}")]
    IncompleteTable(Subset),

    #[error("capacity table lists subset {0} twice")]
    DuplicateTableEntry(Subset),

    #[error("normalization violated: {0}")]
    Normalization(String),

    #[error(
        "monotonicity violated: ν({smaller}) = {smaller_value} > ν({larger}) = {larger_value}"
    )]
    Monotonicity {
        smaller: Subset,
        larger: Subset,
        smaller_value: f64,
        larger_value: f64,
    },

    #[error("λ-measure: {0}")]
    Lambda(String),

    #[error("invalid distortion: {0}")]
    InvalidDistortion(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown {what} `{name}`")]
    UnknownName { what: &'static str, name: String },

    #[error("operator {operator} is not admissible as a {role}: {reason}")]
    InadmissibleOperator {
        operator: String,
        role: &'static str,
        reason: String,
    },

    #[error("functions are not comonotone at points {0} and {1}")]
    NotComonotone(usize, usize),

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
