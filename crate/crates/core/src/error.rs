use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid site space: {0}")]
    InvalidSpace(String),

    #[error("invalid configuration set: {0}")]
    InvalidKSpec(String),

    #[error("hard-core configuration set requires a distance matrix")]
    MissingDistances,

    #[error("enumeration would produce {predicted} configurations, cap is {cap}")]
    CapExceeded { predicted: u128, cap: u128 },

    #[error("tensor order {0} is outside the supported range 0..=3")]
    OrderOutOfRange(usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("product degree {0} exceeds the maximum degree 3")]
    DegreeOverflow(usize),

    #[error("polynomial degree {degree} exceeds the data of the functional (order {available})")]
    DegreeExceedsFunctional { degree: usize, available: usize },

    #[error("weight vector entry {index} is not strictly positive")]
    NonPositiveGamma { index: usize },

    #[error("probability {0} is outside [0, 1]")]
    ProbabilityOutOfRange(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("configuration {0} is not in the admissible set")]
    SupportOutsideK(String),

    #[error("linear program with {rows} rows and {cols} columns exceeds the size cap {cap}")]
    LpTooLarge { rows: usize, cols: usize, cap: usize },

    #[error("objective is unbounded below")]
    Unbounded,

    #[error("simplex exceeded the pivot limit of {0}")]
    PivotLimit(usize),

    #[error("malformed rational {0:?}")]
    ParseRational(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
