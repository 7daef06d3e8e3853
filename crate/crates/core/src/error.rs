use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Syntax error in a monomer file.
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    /// A monomer field violates its contract.
    #[error("field `{field}`: {message}")]
    InvalidMonomer { field: String, message: String },

    #[error("matrix is not symmetric (entry ({row}, {col}) differs from its transpose by {deviation:e})")]
    NotSymmetric { row: usize, col: usize, deviation: f64 },

    #[error("matrix is not Hermitian (entry ({row}, {col}) differs from its conjugate transpose by {deviation:e})")]
    NotHermitian { row: usize, col: usize, deviation: f64 },

    #[error("matrix has a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("valency entry {index} must be strictly positive")]
    NonPositiveValency { index: usize },

    #[error("graph is not equilateral: bond ({0}, {1}) has length {2}")]
    NonEquilateral(usize, usize, f64),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("eigenvalue iteration did not converge")]
    NoConvergence,

    #[error("{0}")]
    InvalidArgument(String),
}
