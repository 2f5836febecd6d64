use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("colouring is not proper at vertex {vertex}")]
    Improper { vertex: usize },
    #[error("action is not free: element {element} fixes {dim}-cell {cell}")]
    NotFree { element: usize, dim: usize, cell: usize },
    #[error("complex is not orientable")]
    NotOrientable,
    #[error("element {0} reverses orientation")]
    OrientationReversing(usize),
    #[error("coset enumeration exceeded the budget of {0} cosets")]
    BudgetExhausted(usize),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
