//! Round-sphere and Fubini–Study geometry with closed-form geodesics.
//!
//! Floating point lives here only. Exact membership decisions for grid
//! models go through [`exact`], which works with rational multiples of π.

pub mod export;
pub mod exact;
pub mod metric;
pub mod microsupport;
pub mod points;
pub mod region;

pub use metric::{dist_cpn, dist_sphere, dist_to_cut_locus_cpn, dist_to_cut_locus_sphere, exp_cpn, exp_sphere};
pub use microsupport::{expected_ss, expected_ss_cpn, CornerCone, Covector, MicrosupportTarget};
pub use points::{bloch, random_projective_point, random_sphere_point, random_unit_tangent_cpn, ProjectivePoint, SpherePoint};
pub use region::{region_member, region_member_dist, MetricPoint, RegionSense, RegionSpec, Space};

/// Tolerance for unit-norm checks.
pub const UNIT_TOL: f64 = 1e-12;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum GeomError {
    #[error("vector is not a unit vector (norm {0})")]
    NotUnit(f64),
    #[error("dimension mismatch: {0} vs {1}")]
    Dimension(usize, usize),
    #[error("region index must be nonzero")]
    ZeroIndex,
    #[error("time {0} lies outside the window [{1}, {2}]")]
    OutsideWindow(f64, f64, f64),
    #[error("region is defined on a different space")]
    SpaceMismatch,
    #[error("csv: {0}")]
    Csv(String),
}
