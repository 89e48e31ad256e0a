//! Sets of cells: open (up-closed), closed (down-closed) and locally closed.

use std::sync::Arc;

use crate::complex::{CellComplex, Q};
use crate::CellError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SetKind {
    Open,
    Closed,
    LocallyClosed,
}

/// Strict predicates describe open regions, non-strict ones closed regions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Strict,
    NonStrict,
}

/// A locally closed set of cells of a fixed complex.
#[derive(Clone, Debug)]
pub struct CellSet {
    complex: Arc<CellComplex>,
    members: Vec<bool>,
    kind: SetKind,
}

impl PartialEq for CellSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.complex, &other.complex) && self.members == other.members
    }
}

pub fn is_closed(x: &CellComplex, m: &[bool]) -> bool {
    (0..x.len()).all(|c| !m[c] || x.facets(c).iter().all(|&(f, _)| m[f as usize]))
}

pub fn is_open(x: &CellComplex, m: &[bool]) -> bool {
    (0..x.len()).all(|c| !m[c] || x.cofacets(c).iter().all(|&(f, _)| m[f as usize]))
}

/// Down-closure.
pub fn closure_of(x: &CellComplex, m: &[bool]) -> Vec<bool> {
    let mut out = m.to_vec();
    for &c in x.cells_by_dim().iter().rev() {
        if out[c as usize] {
            for &(f, _) in x.facets(c as usize) {
                out[f as usize] = true;
            }
        }
    }
    out
}

/// Up-closure (union of open stars).
pub fn star_of(x: &CellComplex, m: &[bool]) -> Vec<bool> {
    let mut out = m.to_vec();
    for &c in x.cells_by_dim() {
        if out[c as usize] {
            for &(f, _) in x.cofacets(c as usize) {
                out[f as usize] = true;
            }
        }
    }
    out
}

pub fn is_locally_closed(x: &CellComplex, m: &[bool]) -> bool {
    let cl = closure_of(x, m);
    let rim: Vec<bool> = cl.iter().zip(m).map(|(&a, &b)| a && !b).collect();
    is_closed(x, &rim)
}

impl CellSet {
    /// Infers the kind (closed preferred, then open); fails unless locally closed.
    pub fn new(complex: Arc<CellComplex>, members: Vec<bool>) -> Result<Self, CellError> {
        if members.len() != complex.len() {
            return Err(CellError::Invalid("membership vector has the wrong length".into()));
        }
        let kind = if is_closed(&complex, &members) {
            SetKind::Closed
        } else if is_open(&complex, &members) {
            SetKind::Open
        } else if is_locally_closed(&complex, &members) {
            SetKind::LocallyClosed
        } else {
            return Err(CellError::NotLocallyClosed);
        };
        Ok(CellSet { complex, members, kind })
    }

    /// Builds a set and insists on the requested kind.
    pub fn with_kind(complex: Arc<CellComplex>, members: Vec<bool>, kind: SetKind) -> Result<Self, CellError> {
        let ok = match kind {
            SetKind::Open => is_open(&complex, &members),
            SetKind::Closed => is_closed(&complex, &members),
            SetKind::LocallyClosed => is_locally_closed(&complex, &members),
        };
        if !ok || members.len() != complex.len() {
            return Err(CellError::WrongKind(kind));
        }
        Ok(CellSet { complex, members, kind })
    }

    pub fn from_cells(complex: Arc<CellComplex>, cells: &[u32]) -> Result<Self, CellError> {
        let mut m = vec![false; complex.len()];
        for &c in cells {
            m[c as usize] = true;
        }
        Self::new(complex, m)
    }

    pub fn empty(complex: Arc<CellComplex>) -> Self {
        let n = complex.len();
        CellSet { complex, members: vec![false; n], kind: SetKind::Closed }
    }

    pub fn whole(complex: Arc<CellComplex>) -> Self {
        let n = complex.len();
        CellSet { complex, members: vec![true; n], kind: SetKind::Closed }
    }

    /// Closed set generated by the given cells.
    pub fn closure_of_cells(complex: Arc<CellComplex>, cells: &[u32]) -> Self {
        let mut m = vec![false; complex.len()];
        for &c in cells {
            m[c as usize] = true;
        }
        let m = closure_of(&complex, &m);
        CellSet { complex, members: m, kind: SetKind::Closed }
    }

    /// Open set generated by the given cells (union of their open stars).
    pub fn star_of_cells(complex: Arc<CellComplex>, cells: &[u32]) -> Self {
        let mut m = vec![false; complex.len()];
        for &c in cells {
            m[c as usize] = true;
        }
        let m = star_of(&complex, &m);
        CellSet { complex, members: m, kind: SetKind::Open }
    }

    pub fn complex(&self) -> &Arc<CellComplex> {
        &self.complex
    }
    pub fn kind(&self) -> SetKind {
        self.kind
    }
    pub fn members(&self) -> &[bool] {
        &self.members
    }
    pub fn contains(&self, c: usize) -> bool {
        self.members[c]
    }
    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }
    pub fn is_empty(&self) -> bool {
        !self.members.iter().any(|&b| b)
    }
    pub fn cells(&self) -> Vec<u32> {
        (0..self.members.len()).filter(|&c| self.members[c]).map(|c| c as u32).collect()
    }

    pub fn closure(&self) -> CellSet {
        CellSet { complex: self.complex.clone(), members: closure_of(&self.complex, &self.members), kind: SetKind::Closed }
    }

    /// Smallest open set containing this one.
    pub fn open_hull(&self) -> CellSet {
        CellSet { complex: self.complex.clone(), members: star_of(&self.complex, &self.members), kind: SetKind::Open }
    }

    /// Complement; open and closed sets swap kinds.
    pub fn complement(&self) -> Result<CellSet, CellError> {
        let m: Vec<bool> = self.members.iter().map(|b| !b).collect();
        match self.kind {
            SetKind::Open => Ok(CellSet { complex: self.complex.clone(), members: m, kind: SetKind::Closed }),
            SetKind::Closed => {
                let kind = if is_closed(&self.complex, &m) { SetKind::Closed } else { SetKind::Open };
                Ok(CellSet { complex: self.complex.clone(), members: m, kind })
            }
            SetKind::LocallyClosed => CellSet::new(self.complex.clone(), m),
        }
    }

    pub fn intersect(&self, other: &CellSet) -> Result<CellSet, CellError> {
        let m = self.members.iter().zip(&other.members).map(|(a, b)| *a && *b).collect();
        CellSet::new(self.complex.clone(), m)
    }

    pub fn union(&self, other: &CellSet) -> Result<CellSet, CellError> {
        let m = self.members.iter().zip(&other.members).map(|(a, b)| *a || *b).collect();
        CellSet::new(self.complex.clone(), m)
    }

    pub fn minus(&self, other: &CellSet) -> Result<CellSet, CellError> {
        let m = self.members.iter().zip(&other.members).map(|(a, b)| *a && !*b).collect();
        CellSet::new(self.complex.clone(), m)
    }

    /// The pair `(closure, open)` with `self = closure ∩ open`.
    pub fn closed_open_pair(&self) -> (CellSet, CellSet) {
        let cl = closure_of(&self.complex, &self.members);
        let open: Vec<bool> = cl.iter().zip(&self.members).map(|(&c, &s)| !c || s).collect();
        (
            CellSet { complex: self.complex.clone(), members: cl, kind: SetKind::Closed },
            CellSet { complex: self.complex.clone(), members: open, kind: SetKind::Open },
        )
    }
}

/// Cells whose barycentre satisfies an exactly evaluated, grid-aligned predicate.
/// The result must be open (strict) or closed (non-strict); otherwise the
/// predicate is not aligned with the grid.
pub fn cells_where_exact(x: &Arc<CellComplex>, sense: Sense, pred: impl Fn(&[Q]) -> bool) -> Result<CellSet, CellError> {
    if x.geometry().is_none_or(|g| g.coord_dim() == 0) {
        return Err(CellError::MissingGeometry);
    }
    let m: Vec<bool> = (0..x.len()).map(|c| pred(x.exact(c))).collect();
    let kind = match sense {
        Sense::Strict => SetKind::Open,
        Sense::NonStrict => SetKind::Closed,
    };
    CellSet::with_kind(x.clone(), m, kind).map_err(|_| CellError::NotAligned)
}

/// Surrogate mode: `certify(cell, vertices)` decides whether the whole closed
/// cell satisfies the predicate. Strict predicates yield the union of open stars
/// of certified cells, non-strict ones the closure of the certified cells.
pub fn cells_where_certified(x: &Arc<CellComplex>, sense: Sense, certify: impl Fn(usize, &[u32]) -> bool) -> CellSet {
    let m: Vec<bool> = (0..x.len()).map(|c| certify(c, &x.vertices(c))).collect();
    match sense {
        Sense::Strict => CellSet { complex: x.clone(), members: star_of(x, &m), kind: SetKind::Open },
        Sense::NonStrict => CellSet { complex: x.clone(), members: closure_of(x, &m), kind: SetKind::Closed },
    }
}

/// Closed set of cells all of whose vertices have time exactly `tau`.
pub fn time_slice(x: &Arc<CellComplex>, tau: Q) -> Result<CellSet, CellError> {
    let g = x.geometry().ok_or(CellError::MissingGeometry)?;
    if g.time_slot.is_none() {
        return Err(CellError::MissingGeometry);
    }
    let vt: Vec<bool> = (0..x.len()).map(|c| x.dim(c) == 0 && x.time(c) == Some(tau)).collect();
    if !vt.iter().any(|&b| b) {
        return Err(CellError::OffGrid(tau.to_string()));
    }
    let m: Vec<bool> = (0..x.len()).map(|c| x.vertices(c).iter().all(|&v| vt[v as usize])).collect();
    Ok(CellSet { complex: x.clone(), members: m, kind: SetKind::Closed })
}

/// Extracts a closed set as a complex of its own; returns the complex and the
/// original id of every new cell.
pub fn subcomplex(a: &CellSet) -> Result<(CellComplex, Vec<u32>), CellError> {
    if a.kind() != SetKind::Closed && !is_closed(a.complex(), a.members()) {
        return Err(CellError::WrongKind(SetKind::Closed));
    }
    let x = a.complex();
    let old: Vec<u32> = a.cells();
    let mut new_id = vec![u32::MAX; x.len()];
    for (i, &c) in old.iter().enumerate() {
        new_id[c as usize] = i as u32;
    }
    let dims = old.iter().map(|&c| x.dim(c as usize) as u8).collect();
    let facets = old
        .iter()
        .map(|&c| x.facets(c as usize).iter().map(|&(f, s)| (new_id[f as usize], s)).collect())
        .collect();
    let geometry = x.geometry().map(|g| {
        let mut h = g.clone();
        h.exact = old.iter().flat_map(|&c| x.exact(c as usize).to_vec()).collect();
        h.points = old.iter().flat_map(|&c| x.point(c as usize).to_vec()).collect();
        h
    });
    Ok((CellComplex::new(dims, facets, geometry)?, old))
}
