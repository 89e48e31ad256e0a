//! Finite regular cell complexes with exact barycentric geometry, open and
//! closed cell sets, and cellular cochain complexes.

pub mod builders;
pub mod cellset;
pub mod cochain;
pub mod complex;
pub mod json;
pub mod product;

pub use builders::{
    circle, circle_labeled, interval_grid, lightcone_lattice, point, simplicial, sphere2, sphere_mesh, sphere_square,
    SphereMesh, VertexData,
};
pub use cellset::{cells_where_certified, cells_where_exact, subcomplex, time_slice, CellSet, Sense, SetKind};
pub use cochain::{cochains_of, relative_cochain};
pub use complex::{exact_barycentre, qabs, wrap, CellComplex, Geometry, Q};
pub use product::product;

#[derive(Debug, thiserror::Error)]
pub enum CellError {
    #[error("invalid complex: {0}")]
    Invalid(String),
    #[error("bad parameter: {0}")]
    Param(String),
    #[error("cell set is not locally closed")]
    NotLocallyClosed,
    #[error("cell set is not of kind {0:?}")]
    WrongKind(SetKind),
    #[error("predicate is not aligned with the cell structure")]
    NotAligned,
    #[error("complex carries no exact geometry")]
    MissingGeometry,
    #[error("time {0} is not a grid value")]
    OffGrid(String),
    #[error("json: {0}")]
    Json(String),
}
