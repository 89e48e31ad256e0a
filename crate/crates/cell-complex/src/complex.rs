//! The cell complex data structure.

use num_rational::Rational64;
use num_traits::{Signed, Zero};

use crate::CellError;

/// Exact coordinates are rational multiples of π.
pub type Q = Rational64;

/// Optional geometric data attached to every cell.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Geometry {
    /// Names of the exact coordinates (e.g. `u`, `t`, `w`).
    pub labels: Vec<String>,
    /// Period of each exact coordinate, if it is an angle.
    pub periods: Vec<Option<Q>>,
    /// Which exact coordinate is time.
    pub time_slot: Option<usize>,
    /// Flat array, `labels.len()` entries per cell: barycentre coordinates.
    pub exact: Vec<Q>,
    /// Flat array, `point_dim` entries per cell: representative point.
    pub point_dim: usize,
    pub points: Vec<f64>,
}

impl Geometry {
    pub fn coord_dim(&self) -> usize {
        self.labels.len()
    }

    pub fn slot(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// Reduces `x` into the half-open period window `(-p/2, p/2]`.
pub fn wrap(x: Q, period: Q) -> Q {
    let half = period / 2;
    let mut y = x;
    while y > half {
        y -= period;
    }
    while y <= -half {
        y += period;
    }
    y
}

/// A finite regular cell complex stored with compressed facet and cofacet lists.
#[derive(Clone, Debug, PartialEq)]
pub struct CellComplex {
    dims: Vec<u8>,
    facet_start: Vec<u32>,
    facets: Vec<(u32, i8)>,
    cofacet_start: Vec<u32>,
    cofacets: Vec<(u32, i8)>,
    by_dim: Vec<u32>,
    geometry: Option<Geometry>,
}

impl CellComplex {
    /// Builds a complex from per-cell dimensions and signed facet lists.
    /// Facets must have dimension one less; `∂∂ = 0` is verified.
    pub fn new(dims: Vec<u8>, facet_lists: Vec<Vec<(u32, i8)>>, geometry: Option<Geometry>) -> Result<Self, CellError> {
        let n = dims.len();
        if facet_lists.len() != n {
            return Err(CellError::Invalid("one facet list per cell".into()));
        }
        let mut facet_start = Vec::with_capacity(n + 1);
        let mut facets = Vec::new();
        facet_start.push(0u32);
        for (c, list) in facet_lists.iter().enumerate() {
            for &(f, s) in list {
                if f as usize >= n || dims[f as usize] + 1 != dims[c] || (s != 1 && s != -1) {
                    return Err(CellError::Invalid(format!("bad facet {f} of cell {c}")));
                }
            }
            let mut l = list.clone();
            l.sort_by_key(|e| e.0);
            facets.extend(l);
            facet_start.push(facets.len() as u32);
        }
        let x = Self::finish(dims, facet_start, facets, geometry)?;
        x.check_boundary()?;
        Ok(x)
    }

    fn finish(dims: Vec<u8>, facet_start: Vec<u32>, facets: Vec<(u32, i8)>, geometry: Option<Geometry>) -> Result<Self, CellError> {
        let n = dims.len();
        if let Some(g) = &geometry {
            if g.exact.len() != n * g.coord_dim() || g.points.len() != n * g.point_dim || g.periods.len() != g.coord_dim() {
                return Err(CellError::Invalid("geometry arrays have the wrong length".into()));
            }
        }
        let mut count = vec![0u32; n + 1];
        for &(f, _) in &facets {
            count[f as usize + 1] += 1;
        }
        for i in 0..n {
            count[i + 1] += count[i];
        }
        let cofacet_start = count.clone();
        let mut fill = count;
        let mut cofacets = vec![(0u32, 0i8); facets.len()];
        for c in 0..n {
            for &(f, s) in &facets[facet_start[c] as usize..facet_start[c + 1] as usize] {
                let slot = &mut fill[f as usize];
                cofacets[*slot as usize] = (c as u32, s);
                *slot += 1;
            }
        }
        let mut by_dim: Vec<u32> = (0..n as u32).collect();
        by_dim.sort_by_key(|&c| (dims[c as usize], c));
        Ok(CellComplex { dims, facet_start, facets, cofacet_start, cofacets, by_dim, geometry })
    }

    fn check_boundary(&self) -> Result<(), CellError> {
        let mut acc: std::collections::HashMap<u32, i64> = std::collections::HashMap::new();
        for c in 0..self.len() {
            acc.clear();
            for &(f, s) in self.facets(c) {
                for &(g, t) in self.facets(f as usize) {
                    *acc.entry(g).or_insert(0) += (s * t) as i64;
                }
            }
            if acc.values().any(|&v| v != 0) {
                return Err(CellError::Invalid(format!("∂∂ ≠ 0 at cell {c}")));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dim(&self, c: usize) -> usize {
        self.dims[c] as usize
    }

    pub fn max_dim(&self) -> usize {
        self.dims.iter().copied().max().unwrap_or(0) as usize
    }

    /// Signed codimension-one faces.
    pub fn facets(&self, c: usize) -> &[(u32, i8)] {
        &self.facets[self.facet_start[c] as usize..self.facet_start[c + 1] as usize]
    }

    /// Signed codimension-one cofaces.
    pub fn cofacets(&self, c: usize) -> &[(u32, i8)] {
        &self.cofacets[self.cofacet_start[c] as usize..self.cofacet_start[c + 1] as usize]
    }

    /// All cells ordered by (dimension, id).
    pub fn cells_by_dim(&self) -> &[u32] {
        &self.by_dim
    }

    pub fn count_dim(&self, d: usize) -> usize {
        self.dims.iter().filter(|&&x| x as usize == d).count()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().map(|&d| if d % 2 == 0 { 1 } else { -1 }).sum()
    }

    pub fn geometry(&self) -> Option<&Geometry> {
        self.geometry.as_ref()
    }

    pub fn set_geometry(&mut self, g: Option<Geometry>) -> Result<(), CellError> {
        if let Some(g) = &g {
            let n = self.len();
            if g.exact.len() != n * g.coord_dim() || g.points.len() != n * g.point_dim {
                return Err(CellError::Invalid("geometry arrays have the wrong length".into()));
            }
        }
        self.geometry = g;
        Ok(())
    }

    /// Exact barycentre coordinates of a cell.
    pub fn exact(&self, c: usize) -> &[Q] {
        match &self.geometry {
            Some(g) => &g.exact[c * g.coord_dim()..(c + 1) * g.coord_dim()],
            None => &[],
        }
    }

    /// Representative point of a cell.
    pub fn point(&self, c: usize) -> &[f64] {
        match &self.geometry {
            Some(g) => &g.points[c * g.point_dim..(c + 1) * g.point_dim],
            None => &[],
        }
    }

    /// Exact time coordinate of a cell, if the complex has one.
    pub fn time(&self, c: usize) -> Option<Q> {
        let g = self.geometry.as_ref()?;
        g.time_slot.map(|s| g.exact[c * g.coord_dim() + s])
    }

    /// Closed cell: the cell and all its faces, sorted ascending.
    pub fn closure(&self, c: usize) -> Vec<u32> {
        let mut out = vec![c as u32];
        let mut i = 0;
        while i < out.len() {
            let x = out[i] as usize;
            for &(f, _) in self.facets(x) {
                out.push(f);
            }
            i += 1;
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Open star: the cell and all its cofaces, sorted ascending.
    pub fn star(&self, c: usize) -> Vec<u32> {
        let mut out = vec![c as u32];
        let mut i = 0;
        while i < out.len() {
            let x = out[i] as usize;
            for &(f, _) in self.cofacets(x) {
                out.push(f);
            }
            i += 1;
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Vertices of the closed cell.
    pub fn vertices(&self, c: usize) -> Vec<u32> {
        self.closure(c).into_iter().filter(|&x| self.dims[x as usize] == 0).collect()
    }

    /// Is `a` a face of `b` (including `a == b`)?
    pub fn is_face(&self, a: usize, b: usize) -> bool {
        if a == b {
            return true;
        }
        if self.dims[a] >= self.dims[b] {
            return false;
        }
        self.closure(b).binary_search(&(a as u32)).is_ok()
    }

    /// Displacement between the exact coordinates of two cells, with
    /// periodic coordinates wrapped into their symmetric window.
    pub fn displacement(&self, from: usize, to: usize) -> Vec<Q> {
        let g = self.geometry.as_ref().expect("geometry present");
        let (a, b) = (self.exact(from), self.exact(to));
        (0..g.coord_dim())
            .map(|i| {
                let d = b[i] - a[i];
                match g.periods[i] {
                    Some(p) => wrap(d, p),
                    None => d,
                }
            })
            .collect()
    }

    /// Incidence number `[c : f]` (0 if `f` is not a facet of `c`).
    pub fn incidence(&self, c: usize, f: usize) -> i8 {
        self.facets(c).iter().find(|e| e.0 as usize == f).map_or(0, |e| e.1)
    }
}

/// Mean of exact coordinates, unwrapping periodic ones around the first entry.
pub fn exact_barycentre(coords: &[&[Q]], periods: &[Option<Q>]) -> Vec<Q> {
    let k = periods.len();
    let n = coords.len() as i64;
    (0..k)
        .map(|i| {
            let base = coords[0][i];
            let mut sum = Q::zero();
            for c in coords {
                let d = match periods[i] {
                    Some(p) => wrap(c[i] - base, p),
                    None => c[i] - base,
                };
                sum += d;
            }
            let m = base + sum / n;
            match periods[i] {
                Some(p) => wrap(m, p),
                None => m,
            }
        })
        .collect()
}

/// Absolute value helper for exact coordinates.
pub fn qabs(x: Q) -> Q {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrap_window() {
        let two = Q::from(2);
        assert_eq!(wrap(Q::from(1), two), Q::from(1));
        assert_eq!(wrap(Q::from(-1), two), Q::from(1));
        assert_eq!(wrap(Q::new(7, 4), two), Q::new(-1, 4));
    }

    #[test]
    fn barycentre_across_the_seam() {
        let p = [Some(Q::from(2))];
        let (a, b) = ([Q::new(3, 4)], [Q::new(-3, 4)]);
        assert_eq!(exact_barycentre(&[&a, &b], &p), vec![Q::from(1)]);
    }
}
