//! Bounded cochain complexes over a field.

pub mod cohomology;
pub mod complex;
pub mod dump;
pub mod ops;

pub use cohomology::{cohomology_basis, cohomology_euler, cohomology_ranks, first_essential_cocycle, is_cocycle, solve_coboundary};
pub use complex::{ChainComplex, ComplexMap};
pub use dump::{read_complex, write_complex};
pub use ops::{cocone, cone, hom_complex, hom_index, map_from_hom_cocycle, tensor};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HomError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("d∘d ≠ 0 starting in degree {0}")]
    NotAComplex(i32),
    #[error("map does not commute with differentials in degree {0}")]
    NotAChainMap(i32),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
