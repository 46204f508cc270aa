use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("expected a point in the {expected} frame, got {actual}")]
    WrongFrame {
        expected: &'static str,
        actual: &'static str,
    },

    #[error("basis mismatch: {left} vs {right}")]
    BasisMismatch { left: String, right: String },

    #[error("operation requires the {expected} representation, got {actual}")]
    WrongRepresentation {
        expected: &'static str,
        actual: &'static str,
    },

    #[error("matrix is singular at pivot {pivot}")]
    Singular { pivot: usize },

    #[error("matrix is ill-conditioned (condition estimate {condition:.3e})")]
    IllConditioned { condition: f64 },

    #[error("degenerate symplectic form; null directions: {null_directions:?}")]
    DegenerateSymplectic { null_directions: Vec<Vec<String>> },

    #[error("constraints not second-class: {0}")]
    NotSecondClass(String),

    #[error("constraint classification error: {0}")]
    Classification(String),

    #[error("eigensolver did not converge for {dim}x{dim} matrix (max-norm {norm:.3e})")]
    NonConvergence { dim: usize, norm: f64 },

    #[error("non-diagonalizable within tolerance: {0}")]
    Defective(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("serialization error: {0}")]
    Serialization(String),

    #[error("generator set has tag {actual}, expected {expected}")]
    WrongAlgebra {
        expected: &'static str,
        actual: &'static str,
    },
}
