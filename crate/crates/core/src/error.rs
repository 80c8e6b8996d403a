use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("malformed simplex system: {0}")]
    MalformedSystem(String),

    #[error("dilation vector has length {got}, expected {expected}")]
    DilationLength { expected: usize, got: usize },

    #[error("invalid dilation: {0}")]
    InvalidDilation(String),

    #[error("enumeration box of {cells} cells exceeds the budget of {budget}")]
    BudgetExceeded { cells: u128, budget: u128 },

    #[error("arity mismatch: expected {expected} variables, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("not a quasipolynomial with periods {periods:?} and degree {degree}: {detail}")]
    NotQuasipolynomial {
        periods: Vec<u64>,
        degree: u32,
        detail: String,
    },

    #[error("invalid triangle: {0}")]
    InvalidTriangle(String),

    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}
