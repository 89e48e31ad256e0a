//! Projective resolutions of constant sheaves on locally closed sets.
//!
//! Cells are visited by increasing dimension. At a cell `σ` the generators
//! already placed on proper faces give a stalk complex, augmented by `K` in
//! degree 1 when `σ ∈ Z`. Each cohomology class of the augmented complex is
//! killed by a new generator on `σ`, which leaves it acyclic; hence the stalk
//! of the result maps quasi-isomorphically onto the stalk of `K_Z`. Cells whose
//! closed cell lies inside `Z` take the cellular generator directly.

use std::collections::BTreeMap;
use std::sync::Arc;

use cell_complex::{CellSet, SetKind};
use exact_linalg::{normalize, Field, SparseMatrix, SparseVec};
use homological::{cohomology_basis, cohomology_ranks, ChainComplex};

use crate::sheaf::{Gen, Sheaf};
use crate::space::CellSpace;
use crate::SheafError;

/// Resolution of `K_Z` for the locally closed `Z = {c : in_z(c)}`.
/// `candidates` must list, by increasing dimension, every cell having a face
/// in `Z` (extra cells are harmless).
pub fn resolve<F: Field>(space: &Arc<CellSpace>, field: &F, candidates: &[u32], in_z: impl Fn(u32) -> bool) -> Sheaf<F> {
    let x = space.complex();
    let n = space.len();
    let mut gens: Vec<Gen> = Vec::new();
    let mut diff: Vec<SparseVec<F::Elem>> = Vec::new();
    // Augmentation coefficient of every degree-0 generator.
    let mut eps: Vec<F::Elem> = Vec::new();
    // Generators on a cell form a contiguous range.
    let mut range: Vec<(u32, u32)> = vec![(0, 0); n];
    let mut fast = vec![false; n];

    for &s in candidates {
        let su = s as usize;
        let z = in_z(s);
        let start = gens.len() as u32;
        if z && x.facets(su).iter().all(|&(f, _)| fast[f as usize]) {
            fast[su] = true;
            let col = normalize(
                field,
                x.facets(su).iter().map(|&(f, sgn)| (range[f as usize].0, field.from_i64(sgn as i64))).collect(),
            );
            gens.push(Gen { cell: s, deg: -(x.dim(su) as i32) });
            diff.push(col);
            eps.push(if x.dim(su) == 0 { field.one() } else { field.zero() });
            range[su] = (start, start + 1);
            continue;
        }
        let local: Vec<u32> = space
            .closure(s)
            .iter()
            .filter(|&&f| f != s)
            .flat_map(|&f| {
                let (a, b) = range[f as usize];
                a..b
            })
            .collect();
        if local.is_empty() && !z {
            continue;
        }
        let (q, index) = augmented(field, &gens, &diff, &eps, &local, z);
        for (k, _) in cohomology_ranks(&q) {
            let slot = if z && k == 1 { Some(index.get(&1).map_or(0, |v| v.len()) as u32) } else { None };
            for cls in cohomology_basis(&q, k) {
                let mut col = Vec::new();
                let mut e = field.zero();
                for (i, c) in cls {
                    if Some(i) == slot {
                        e = c;
                    } else {
                        col.push((index[&k][i as usize], c));
                    }
                }
                gens.push(Gen { cell: s, deg: k - 1 });
                diff.push(normalize(field, col));
                eps.push(e);
            }
        }
        range[su] = (start, gens.len() as u32);
    }
    Sheaf::new_unchecked(space.clone(), field.clone(), gens, diff).expect("generators lie on known cells")
}

/// The augmented stalk complex on the generators `local`; the slot for `K`
/// (if any) is the last basis vector in degree 1.
fn augmented<F: Field>(
    field: &F,
    gens: &[Gen],
    diff: &[SparseVec<F::Elem>],
    eps: &[F::Elem],
    local: &[u32],
    slot: bool,
) -> (ChainComplex<F>, BTreeMap<i32, Vec<u32>>) {
    let mut by_deg: BTreeMap<i32, Vec<u32>> = BTreeMap::new();
    for &g in local {
        by_deg.entry(gens[g as usize].deg).or_default().push(g);
    }
    let lo = by_deg.keys().next().copied().unwrap_or(1).min(1);
    let hi = by_deg.keys().last().copied().unwrap_or(1).max(if slot { 1 } else { lo });
    let dims: Vec<usize> =
        (lo..=hi).map(|k| by_deg.get(&k).map_or(0, |v| v.len()) + usize::from(slot && k == 1)).collect();
    let mut pos = std::collections::HashMap::with_capacity(local.len());
    for v in by_deg.values() {
        for (i, &g) in v.iter().enumerate() {
            pos.insert(g, i as u32);
        }
    }
    let slot_idx = by_deg.get(&1).map_or(0, |v| v.len()) as u32;
    let mats = (lo..hi)
        .map(|k| {
            let cols = by_deg
                .get(&k)
                .map(|v| {
                    v.iter()
                        .map(|&g| {
                            let mut col: Vec<(u32, F::Elem)> =
                                diff[g as usize].iter().map(|(h, c)| (pos[h], c.clone())).collect();
                            if slot && k == 0 && !field.is_zero(&eps[g as usize]) {
                                col.push((slot_idx, eps[g as usize].clone()));
                            }
                            normalize(field, col)
                        })
                        .collect()
                })
                .unwrap_or_default();
            SparseMatrix::from_columns(field.clone(), dims[(k - lo + 1) as usize], cols).expect("valid shape")
        })
        .collect();
    (ChainComplex::new_unchecked(field.clone(), lo, dims, mats).expect("valid shapes"), by_deg)
}

/// Resolution of `K_Z` for a locally closed cell set.
pub fn constant_on<F: Field>(space: &Arc<CellSpace>, field: &F, z: &CellSet) -> Result<Sheaf<F>, SheafError> {
    if !Arc::ptr_eq(z.complex(), space.complex()) {
        return Err(SheafError::Mismatch("cell set lives on another complex".into()));
    }
    if z.kind() != SetKind::Closed
        && z.kind() != SetKind::Open
        && !cell_complex::cellset::is_locally_closed(space.complex(), z.members())
    {
        return Err(SheafError::NotLocallyClosed);
    }
    let up = z.open_hull();
    let candidates: Vec<u32> = space.complex().cells_by_dim().iter().copied().filter(|&c| up.contains(c as usize)).collect();
    Ok(resolve(space, field, &candidates, |c| z.contains(c as usize)))
}

/// The constant sheaf on the whole complex (its cellular resolution).
pub fn constant_whole<F: Field>(space: &Arc<CellSpace>, field: &F) -> Sheaf<F> {
    resolve(space, field, space.complex().cells_by_dim(), |_| true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use cell_complex::{circle, interval_grid, sphere2};
    use exact_linalg::{PrimeField, Rationals};

    #[test]
    fn constant_sheaf_stalks_are_one_dimensional() {
        let space = CellSpace::new(Arc::new(sphere2(1).unwrap()));
        let k = constant_whole(&space, &Rationals);
        for c in 0..space.len() as u32 {
            assert_eq!(k.stalk(c), BTreeMap::from([(0, 1)]));
        }
    }

    #[test]
    fn open_arc_has_acyclic_boundary_stalks() {
        let x = Arc::new(circle(6).unwrap());
        let space = CellSpace::new(x.clone());
        let open = CellSet::star_of_cells(x.clone(), &[0]);
        let k = constant_on(&space, &PrimeField::F2, &open).unwrap();
        for c in 0..x.len() {
            let want = if open.contains(c) { BTreeMap::from([(0, 1)]) } else { BTreeMap::new() };
            assert_eq!(k.stalk(c as u32), want, "cell {c}");
        }
    }

    #[test]
    fn half_open_interval() {
        use cell_complex::Q;
        let x = Arc::new(interval_grid(Q::from_integer(0), Q::from_integer(3), Q::from_integer(1)).unwrap());
        let space = CellSpace::new(x.clone());
        let m: Vec<bool> = (0..x.len()).map(|c| !(x.dim(c) == 0 && x.time(c) == Some(Q::from_integer(0)))).collect();
        let z = CellSet::new(x.clone(), m).unwrap();
        let k = constant_on(&space, &Rationals, &z).unwrap();
        for c in 0..x.len() {
            let want = if z.contains(c) { BTreeMap::from([(0, 1)]) } else { BTreeMap::new() };
            assert_eq!(k.stalk(c as u32), want);
        }
    }
}
