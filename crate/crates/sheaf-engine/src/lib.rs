//! Constructible sheaves on regular cell complexes.
//!
//! Every sheaf is stored as a bounded complex of constant sheaves on open
//! stars of cells. These are projective, so derived Hom is the plain Hom
//! complex and cones are computed on the nose.

pub mod cone;
pub mod hom;
pub mod micro;
pub mod resolve;
pub mod sheaf;
pub mod space;

pub use cone::{sheaf_cocone, sheaf_cone};
pub use hom::{compose, ext_ranks, global_sections, hom_sheaf, lift_ext_class, HomComplex, SheafMorphism};
pub use micro::{directions, gamma_stalk, micro_test, MicroTester};
pub use resolve::{constant_on, constant_whole, resolve};
pub use sheaf::{Gen, Sheaf, SheafJson, Summand};
pub use space::CellSpace;

#[derive(Debug, thiserror::Error)]
pub enum SheafError {
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("invalid sheaf: {0}")]
    Invalid(String),
    #[error("cell set is not locally closed")]
    NotLocallyClosed,
    #[error("no class of degree {degree} with index {index}")]
    NoClass { degree: i32, index: usize },
    #[error("not a chain map: {0}")]
    InvalidMorphism(String),
    #[error("direction must be a nonzero integer vector of length {0}")]
    InvalidDirection(usize),
    #[error("differential squares to a nonzero map at generator {0}")]
    NotAComplex(usize),
    #[error(transparent)]
    Cell(#[from] cell_complex::CellError),
    #[error(transparent)]
    Hom(#[from] homological::HomError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
