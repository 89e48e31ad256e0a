//! Discrete models of `M × M × [−T, T]` and the regions `Z_i` on them.
//!
//! * `S^1`: the periodic light-cone lattice in `u = θx − θy` and `t`, times a
//!   three-vertex circle in `w = θy`. Every region boundary is a lattice line,
//!   so membership is decided exactly on barycentres.
//! * `CP^1`: the staircase triangulation of `S² × S²` (octahedron squared,
//!   Bloch-sphere picture) times a time grid with `mesh` steps per π. Regions
//!   are certified on closed cells from vertex distances.
//!
//! Times and distances are in units of π throughout.

use std::collections::BTreeMap;
use std::sync::Arc;

use cell_complex::{
    cells_where_certified, cells_where_exact, circle_labeled, interval_grid, lightcone_lattice, product, sphere_mesh,
    sphere_square, time_slice, CellComplex, CellSet, Sense, Q,
};
use geometry::exact::{circle_expected, circle_region};
use num_traits::{Signed, ToPrimitive, Zero};
use sheaf_engine::CellSpace;

use crate::{KernelError, Space};

/// Slack for float comparisons of vertex distances on the projective mesh.
const CERT_TOL: f64 = 1e-9;

#[derive(Clone)]
pub struct Model {
    pub space: Space,
    pub mesh: usize,
    /// Half-width `T` of the time window.
    pub t_max: Q,
    pub complex: Arc<CellComplex>,
    pub cells: Arc<CellSpace>,
    /// Size of the time factor (projective model only).
    time_cells: usize,
}

impl Model {
    pub fn new(space: Space, mesh: usize, t_max: Q) -> Result<Self, KernelError> {
        if mesh < 4 {
            return Err(KernelError::Unsupported(format!("mesh must be at least 4, got {mesh}")));
        }
        if t_max <= Q::zero() {
            return Err(KernelError::Window(format!("T = {t_max} must be positive")));
        }
        match space {
            Space::Sphere(1) => Self::circle_model(mesh, t_max),
            Space::Projective(1) => Self::projective_model(mesh, t_max),
            _ => Err(KernelError::Unsupported(format!(
                "full pipeline implemented for n = 1 only, got {} n = {}",
                space.name(),
                space.n()
            ))),
        }
    }

    fn circle_model(mesh: usize, t_max: Q) -> Result<Self, KernelError> {
        let j = t_max * Q::from(2 * mesh as i64);
        if !j.is_integer() {
            return Err(KernelError::Window(format!("T = {t_max} is not a multiple of 1/{}", 2 * mesh)));
        }
        let j = j.to_integer();
        let lattice = lightcone_lattice(mesh, -j, j, true, Q::zero())?;
        let complex = Arc::new(product(&lattice, &circle_labeled(3, "w")?)?);
        let cells = CellSpace::new(complex.clone());
        Ok(Model { space: Space::Sphere(1), mesh, t_max, complex, cells, time_cells: 0 })
    }

    fn projective_model(mesh: usize, t_max: Q) -> Result<Self, KernelError> {
        let grid = interval_grid(-t_max, t_max, Q::new(1, mesh as i64))?;
        let time_cells = grid.len();
        let complex = Arc::new(product(&sphere_square(&sphere_mesh(0))?, &grid)?);
        let cells = CellSpace::new(complex.clone());
        Ok(Model { space: Space::Projective(1), mesh, t_max, complex, cells, time_cells })
    }

    /// Is the lattice model (exact regions, known direction classes) in use?
    pub fn is_lattice(&self) -> bool {
        matches!(self.space, Space::Sphere(_))
    }

    /// `Z_i` is nonempty only when `(|i| − 1) < T`.
    pub fn in_window(&self, i: i32) -> bool {
        i != 0 && Q::from(i.abs() as i64 - 1) < self.t_max
    }

    /// Largest `|i|` with `Z_{±i}` possibly nonempty.
    pub fn max_index(&self) -> i32 {
        (1..).take_while(|&i| self.in_window(i)).last().unwrap_or(0)
    }

    /// The region `Z_i`: open for `i > 0`, closed for `i < 0`.
    pub fn region(&self, i: i32) -> Result<CellSet, KernelError> {
        if !self.in_window(i) {
            return Ok(CellSet::empty(self.complex.clone()));
        }
        let sense = if i > 0 { Sense::Strict } else { Sense::NonStrict };
        match self.space {
            Space::Sphere(_) => Ok(cells_where_exact(&self.complex, sense, |p| circle_region(i, p[0], p[1]))?),
            Space::Projective(_) => Ok(cells_where_certified(&self.complex, sense, |_, vs| self.certify(i, vs))),
        }
    }

    /// Does the closed cell spanned by `vs` satisfy the defining inequality of
    /// `Z_i`? Uses `max d_i < min (t − (i−1))` (or `≤ min(−t − (|i|−1))`).
    fn certify(&self, i: i32, vs: &[u32]) -> bool {
        let shift = (i.abs() - 1) as f64;
        let mut max_d = f64::NEG_INFINITY;
        let mut min_margin = f64::INFINITY;
        for &v in vs {
            let d = self.vertex_dist(v);
            let d = if i % 2 == 0 { 1.0 - d } else { d };
            let t = self.time(v).to_f64().expect("finite");
            let margin = if i > 0 { t - shift } else { -t - shift };
            max_d = max_d.max(d);
            min_margin = min_margin.min(margin);
        }
        if i > 0 {
            max_d < min_margin - CERT_TOL
        } else {
            max_d <= min_margin + CERT_TOL
        }
    }

    /// Distance between the two factors at a vertex of the projective model.
    fn vertex_dist(&self, v: u32) -> f64 {
        let p = self.complex.point(v as usize);
        let dot: f64 = (0..3).map(|k| p[k] * p[k + 3]).sum();
        dot.clamp(-1.0, 1.0).acos() / std::f64::consts::PI
    }

    pub fn time(&self, c: u32) -> Q {
        self.complex.time(c as usize).expect("models carry a time coordinate")
    }

    /// All vertices of the closed cell lie on the diagonal `x = y`.
    pub fn on_diagonal(&self, c: u32) -> bool {
        self.complex.vertices(c as usize).iter().all(|&v| match self.space {
            Space::Sphere(_) => self.complex.exact(v as usize)[0].is_zero(),
            Space::Projective(_) => {
                let p = self.complex.point(v as usize);
                (0..3).all(|k| (p[k] - p[k + 3]).abs() < CERT_TOL)
            }
        })
    }

    /// A key identifying a cell across models with different windows.
    pub fn key(&self, c: u32) -> (usize, Vec<Q>) {
        match self.space {
            Space::Sphere(_) => (self.complex.dim(c as usize), self.complex.exact(c as usize).to_vec()),
            Space::Projective(_) => {
                let base = c as usize / self.time_cells;
                (base, vec![Q::from(self.complex.dim(c as usize) as i64), self.time(c)])
            }
        }
    }

    pub fn slice(&self, t: Q) -> Result<CellSet, KernelError> {
        if t.abs() > self.t_max {
            return Err(KernelError::Window(format!("slice t = {t} lies outside [−{0}, {0}]", self.t_max)));
        }
        Ok(time_slice(&self.complex, t)?)
    }

    /// Vertices of the model, in id order.
    pub fn vertices(&self) -> Vec<u32> {
        (0..self.complex.len() as u32).filter(|&c| self.complex.dim(c as usize) == 0).collect()
    }

    /// Direction classes of `Λ` over a vertex, in the coordinate order of the
    /// lattice model `(u, t, w)`; `None` off the lattice model.
    pub fn expected_directions(&self, v: u32) -> Option<Vec<Vec<i64>>> {
        if !self.is_lattice() {
            return None;
        }
        let p = self.complex.exact(v as usize);
        let mut out: Vec<Vec<i64>> = circle_expected(p[0], p[1], false)
            .into_iter()
            .map(|[du, dw, dt]| vec![du as i64, dt as i64, dw as i64])
            .collect();
        out.sort();
        Some(out)
    }
}

/// Every region of the window: `i ↦ Z_i` for `0 < |i| ≤ max_index`.
pub fn build_regions(model: &Model) -> Result<BTreeMap<i32, CellSet>, KernelError> {
    let m = model.max_index();
    let mut out = BTreeMap::new();
    for i in (-m..=m).filter(|&i| i != 0) {
        out.insert(i, model.region(i)?);
    }
    Ok(out)
}
