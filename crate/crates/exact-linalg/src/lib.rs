//! Exact sparse linear algebra over `F_p` and `Q`.

pub mod dump;
pub mod field;
pub mod ops;
pub mod reduce;
pub mod sparse;

pub use dump::{read_header, read_matrix, write_matrix};
pub use field::{Field, FieldKind, PrimeField, Rationals};
pub use ops::{kernel_basis, kernel_basis_with, rank, rank_with, rref, rref_with, solve, solve_sparse, solve_with, LinalgConfig, Rref};
pub use reduce::{ColumnReducer, Insert};
pub use sparse::{axpy, densify, normalize, scale, sparsify, SparseMatrix, SparseVec};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    OutOfBounds { row: usize, col: usize, rows: usize, cols: usize },
    #[error("linear system has no solution")]
    Inconsistent,
    #[error("{0} is not a supported prime")]
    NotPrime(u64),
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: FieldKind, found: FieldKind },
    #[error("parse error: {0}")]
    Parse(String),
}
