//! Exact linear algebra over Q and Q(i).

mod matrix;
mod psd;
mod scalar;
mod subspace;

use thiserror::Error;

pub use matrix::{axpy, conj_vector, dot, form, is_zero_vector, scale, to_sparse, unit_vector, Matrix};
pub use psd::{psd_check, psd_witness};
pub use scalar::{Scalar, ScalarParseError};
pub use subspace::{nullspace, nullspace_rows, rank, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not Hermitian at ({row}, {col})")]
    NotHermitian { row: usize, col: usize },
    #[error("subspace is not contained in the enclosing subspace")]
    NotContained,
}
