use thiserror::Error;

use crate::group::Family;
use crate::linalg::IntegerPolynomial;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter n = {n} is below the minimum {min} for the {family} family")]
    ParameterOutOfRange {
        family: Family,
        n: usize,
        min: usize,
    },

    #[error("vertex count mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("composition needs one part per outer vertex: {outer} outer vertices, {parts} parts")]
    ArityMismatch { outer: usize, parts: usize },

    #[error("no closed form is known for {kind} on the {family} family")]
    UnsupportedCombination { kind: String, family: Family },

    #[error("graph is not Laplacian-integral; residual factor {residual}")]
    NotIntegral { residual: IntegerPolynomial },

    #[error("matrix is not square: {rows} x {cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not a graph Laplacian: {0}")]
    NotLaplacian(String),

    #[error("group axiom violated: {0}")]
    AxiomViolation(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),
}
