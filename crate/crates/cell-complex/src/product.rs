//! Cartesian products of cell complexes.

use crate::complex::{CellComplex, Geometry};
use crate::CellError;

/// `X × Y`: cell `(a, b)` has id `a * |Y| + b` and dimension `dim a + dim b`;
/// `∂(a × b) = ∂a × b + (-1)^{dim a} a × ∂b`. Geometry tags are concatenated.
pub fn product(x: &CellComplex, y: &CellComplex) -> Result<CellComplex, CellError> {
    let (nx, ny) = (x.len(), y.len());
    let mut dims = Vec::with_capacity(nx * ny);
    let mut facets = Vec::with_capacity(nx * ny);
    for a in 0..nx {
        for b in 0..ny {
            dims.push((x.dim(a) + y.dim(b)) as u8);
            let mut fl: Vec<(u32, i8)> = Vec::new();
            for &(f, s) in x.facets(a) {
                fl.push((f * ny as u32 + b as u32, s));
            }
            let sign: i8 = if x.dim(a).is_multiple_of(2) { 1 } else { -1 };
            for &(f, s) in y.facets(b) {
                fl.push((a as u32 * ny as u32 + f, s * sign));
            }
            facets.push(fl);
        }
    }
    let geometry = match (x.geometry(), y.geometry()) {
        (None, None) => None,
        (gx, gy) => {
            let empty = Geometry::default();
            let (gx, gy) = (gx.unwrap_or(&empty), gy.unwrap_or(&empty));
            if gx.time_slot.is_some() && gy.time_slot.is_some() {
                return Err(CellError::Invalid("both factors carry a time coordinate".into()));
            }
            let mut labels = gx.labels.clone();
            labels.extend(gy.labels.iter().cloned());
            let mut periods = gx.periods.clone();
            periods.extend(gy.periods.iter().cloned());
            let time_slot = gx.time_slot.or(gy.time_slot.map(|s| s + gx.coord_dim()));
            let mut exact = Vec::with_capacity(nx * ny * labels.len());
            let mut points = Vec::with_capacity(nx * ny * (gx.point_dim + gy.point_dim));
            for a in 0..nx {
                for b in 0..ny {
                    exact.extend_from_slice(x.exact(a));
                    exact.extend_from_slice(y.exact(b));
                    points.extend_from_slice(x.point(a));
                    points.extend_from_slice(y.point(b));
                }
            }
            Some(Geometry { labels, periods, time_slot, exact, point_dim: gx.point_dim + gy.point_dim, points })
        }
    };
    CellComplex::new(dims, facets, geometry)
}
