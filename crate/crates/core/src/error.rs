use thiserror::Error;

use crate::scalar::Field;

/// Errors surfaced by the exact linear algebra layer and everything built on it.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: Field, right: Field },

    #[error("shape mismatch: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    ShapeMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error(
        "quotient requires nested subspaces: the second argument is not contained in the first"
    )]
    NotNested,

    #[error("vector lies outside the operator domain: [{vector}]")]
    DomainViolation { vector: String },

    #[error("completion vectors are dependent modulo the base subspace (vector {index})")]
    DependentCompletions { index: usize },

    #[error("input classes are not independent modulo the kernel power")]
    DependentClasses,

    #[error("top vector {index} does not lie in the required kernel power")]
    TopOutsideKernel { index: usize },

    #[error("perturbation rank is {actual}, expected exactly 1")]
    RankNotOne { actual: usize },

    #[error("kernel power sequence did not stabilize within the cap of {cap} steps")]
    Truncated { cap: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
