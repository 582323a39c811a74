use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("element {element} out of range for ground set of size {n}")]
    OutOfRange { element: usize, n: usize },

    #[error("element {0} appears more than once in the set")]
    DuplicateElement(usize),

    #[error("element {0} is a loop")]
    Loop(usize),

    #[error("invalid weight {weight} for element {element}: weights must be finite and positive")]
    InvalidWeight { element: usize, weight: f64 },

    #[error("ground set has {n} elements, exceeding the enumeration limit of {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("element {0} is already present")]
    AlreadyPresent(usize),

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("invalid matroid: {0}")]
    InvalidMatroid(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("order is not a permutation of 0..{0}")]
    NotPermutation(usize),

    #[error("could not draw distinct weights after {0} attempts")]
    TiesExhausted(usize),

    /// A hard runtime guarantee failed (for example a selection exceeding its covering budget).
    #[error("assertion failed: {0}")]
    Assertion(String),
}
