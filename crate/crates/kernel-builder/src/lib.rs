//! Assembly of the sheaf quantization kernel of the geodesic flow on `S^1`
//! and `CP^1` from constant sheaves on the regions `Z_i`, glued by iterated
//! cones, together with the checks run on the result.

pub mod model;
pub mod report;
pub mod tower;
pub mod verify;

use std::collections::BTreeMap;

use serde::Serialize;

pub use model::{build_regions, Model};
pub use report::{ExtRow, Mismatch, Report, SliceCheck};
pub use tower::{assemble, assemble_kernel, assemble_minus, assemble_plus, choose_generators, Assembly, Options};
pub use verify::{
    scaling_invariance, slice_check, t0_check, verify_slice_constructibility, verify_ss_profile, window_growth_mismatches,
};

/// The manifold `M` of the kernel on `M × M × I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Space {
    Sphere(usize),
    Projective(usize),
}

impl Space {
    pub fn n(&self) -> usize {
        match *self {
            Space::Sphere(n) | Space::Projective(n) => n,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Space::Sphere(_) => "sphere",
            Space::Projective(_) => "projective",
        }
    }

    /// Degree of `ψ_{±i}`: the Thom degree of the normal bundle of the
    /// diagonal (sphere) or of the cut locus (even index, projective).
    pub fn step_degree(&self, i: i32) -> i32 {
        let n = self.n() as i32;
        match self {
            Space::Sphere(_) => n,
            Space::Projective(_) if i.abs() % 2 == 1 => 2,
            Space::Projective(_) => 2 * n,
        }
    }

    /// Degree of `ψ_0 ∈ Ext(K_-, K_+)`.
    pub fn kernel_degree(&self) -> i32 {
        match *self {
            Space::Sphere(n) => n as i32 + 1,
            Space::Projective(n) => 2 * n as i32 + 1,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum KernelError {
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("bad window: {0}")]
    Window(String),
    #[error("{stage}: expected rank 1 in degree {degree}, found ranks {ranks:?}")]
    Rank { stage: String, degree: i32, ranks: BTreeMap<i32, usize> },
    #[error("{stage}: expected vanishing Ext, found ranks {ranks:?}")]
    Vanishing { stage: String, ranks: BTreeMap<i32, usize> },
    #[error("{0}: induced morphism does not restrict to a generator")]
    Lift(String),
    #[error(transparent)]
    Cell(#[from] cell_complex::CellError),
    #[error(transparent)]
    Sheaf(#[from] sheaf_engine::SheafError),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees() {
        assert_eq!(Space::Sphere(1).step_degree(-3), 1);
        assert_eq!(Space::Projective(1).step_degree(2), 2);
        assert_eq!(Space::Projective(2).step_degree(2), 4);
        assert_eq!(Space::Projective(2).step_degree(-1), 2);
        assert_eq!(Space::Sphere(1).kernel_degree(), 2);
        assert_eq!(Space::Projective(1).kernel_degree(), 3);
    }
}
