use thiserror::Error;

use crate::curvature::Equation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("degenerate inner product: {0}")]
    Degenerate(String),
    /// The tensor is outside the class an operation requires.
    #[error("tensor is not in {required}: {violated} identity fails")]
    Class {
        required: &'static str,
        violated: Equation,
    },
    #[error("parse error: {0}")]
    Parse(String),
}
