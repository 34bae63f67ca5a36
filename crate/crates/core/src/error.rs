use thiserror::Error;

/// Failures raised by the decompositions and canonical-form reductions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("singular input: Gram-Schmidt residual of column {column} is {residual:e}")]
    SingularInput { column: usize, residual: f64 },

    #[error("{routine} did not converge within {limit} iterations")]
    NoConvergence { routine: &'static str, limit: usize },

    #[error("{lambda} is not an eigenvalue (A - lambda I has full rank)")]
    NotAnEigenvalue { lambda: f64 },

    #[error("bad shape: {0}")]
    BadShape(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("spectrum is not real: eigenvalue {re}+{im}i")]
    NonRealSpectrum { re: f64, im: f64 },

    #[error("matrix is not idempotent: |A^2 - A| = {residual:e}")]
    NotIdempotent { residual: f64 },

    #[error("matrix is not square-zero: |A^2| = {residual:e}")]
    NotSquareZero { residual: f64 },

    #[error("matrix is derogatory: eigenvalue {re}+{im}i has geometric multiplicity {geometric}")]
    Derogatory { re: f64, im: f64, geometric: usize },

    #[error("chain construction failed: {0}")]
    ChainFailure(String),

    #[error("entry ({l}, {r}) reduced out of order; expected ({expected_l}, {expected_r})")]
    InternalOrderViolation {
        l: usize,
        r: usize,
        expected_l: usize,
        expected_r: usize,
    },

    #[error(
        "permuted canonical matrix is not block diagonal: entry ({row}, {col}) = {magnitude:e}"
    )]
    NotBlockDiagonal {
        row: usize,
        col: usize,
        magnitude: f64,
    },

    #[error("eigenvalue clustering is inconsistent: {0}")]
    InconsistentSpectrum(String),
}

pub type Result<T> = std::result::Result<T, Error>;
