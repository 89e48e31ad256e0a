//! Cohomology ranks, cocycle representatives and coboundary solving.
//!
//! Ranks use column reduction with clearing: a column of `d^k` whose index is
//! a pivot row of the reduced `d^{k-1}` is never reduced. Representatives are
//! read off from columns of `d^k` that reduce to zero, scanning right to left
//! so that each kernel vector has a distinct lowest index; the essential ones
//! are those whose index is not a pivot row of `d^{k-1}`.

use std::collections::BTreeMap;

use exact_linalg::{ColumnReducer, Field, Insert, SparseVec};

use crate::complex::ChainComplex;

/// Pivot rows of the reduced `d^k` (rows live in `C^{k+1}`), with clearing
/// from `cleared` (indices of `C^k` known to be redundant).
fn reduce_degree<F: Field>(c: &ChainComplex<F>, k: i32, cleared: &[bool]) -> (usize, Vec<bool>) {
    let Some(d) = c.d_ref(k) else {
        return (0, vec![false; c.dim(k + 1)]);
    };
    let mut red = ColumnReducer::new(c.field().clone(), d.rows(), false);
    for (j, col) in d.columns().iter().enumerate() {
        if cleared.get(j).copied().unwrap_or(false) {
            red.skip();
        } else {
            red.insert(col.clone());
        }
    }
    let mut piv = vec![false; d.rows()];
    for r in red.pivot_rows() {
        piv[r] = true;
    }
    (red.rank(), piv)
}

/// `rank H^k` for every degree with nonzero cohomology.
pub fn cohomology_ranks<F: Field>(c: &ChainComplex<F>) -> BTreeMap<i32, usize> {
    let mut out = BTreeMap::new();
    let mut cleared = vec![false; c.dim(c.lo())];
    let mut prev_rank = 0;
    for k in c.degrees() {
        let (rank, piv) = reduce_degree(c, k, &cleared);
        let h = c.dim(k) - rank - prev_rank;
        if h > 0 {
            out.insert(k, h);
        }
        prev_rank = rank;
        cleared = piv;
    }
    out
}

/// Euler characteristic of the cohomology (equals that of the complex).
pub fn cohomology_euler(ranks: &BTreeMap<i32, usize>) -> i64 {
    ranks.iter().map(|(k, r)| if k.rem_euclid(2) == 0 { *r as i64 } else { -(*r as i64) }).sum()
}

fn boundary_pivots<F: Field>(c: &ChainComplex<F>, k: i32) -> Vec<bool> {
    // Pivot rows of d^{k-1}; clearing from d^{k-2} is not needed for correctness.
    reduce_degree(c, k - 1, &[]).1
}

/// Cocycles of degree `k` representing a basis of `H^k`, in ascending order
/// of their lowest index.
pub fn cohomology_basis<F: Field>(c: &ChainComplex<F>, k: i32) -> Vec<SparseVec<F::Elem>> {
    scan_essential(c, k, usize::MAX)
}

/// A single representative of a nonzero class in `H^k`: the essential
/// cocycle with the largest lowest index. `None` when `H^k = 0`.
pub fn first_essential_cocycle<F: Field>(c: &ChainComplex<F>, k: i32) -> Option<SparseVec<F::Elem>> {
    scan_essential(c, k, 1).into_iter().next()
}

fn scan_essential<F: Field>(c: &ChainComplex<F>, k: i32, limit: usize) -> Vec<SparseVec<F::Elem>> {
    let n = c.dim(k);
    if n == 0 {
        return Vec::new();
    }
    let piv = boundary_pivots(c, k);
    let f = c.field().clone();
    let mut found = Vec::new();
    let d = c.d(k);
    let mut red = ColumnReducer::new(f.clone(), d.rows(), true);
    // Column j is inserted as id n-1-j.
    for j in (0..n).rev() {
        if piv[j] {
            red.skip();
            continue;
        }
        if let Insert::Zero(Some(kv)) = red.insert(d.column(j).to_vec()) {
            let mut z: SparseVec<F::Elem> = kv.into_iter().map(|(i, x)| ((n - 1 - i as usize) as u32, x)).collect();
            z.sort_by_key(|e| e.0);
            found.push(z);
            if found.len() >= limit {
                break;
            }
        }
    }
    found.reverse();
    found
}

/// Solves `d^{k-1} x = z`; `None` if `z` is not a coboundary.
pub fn solve_coboundary<F: Field>(c: &ChainComplex<F>, k: i32, z: &[(u32, F::Elem)]) -> Option<SparseVec<F::Elem>> {
    if z.is_empty() {
        return Some(Vec::new());
    }
    let d = c.d_ref(k - 1)?;
    exact_linalg::solve_sparse(d, z)
}

/// Is `z` a cocycle of degree `k`?
pub fn is_cocycle<F: Field>(c: &ChainComplex<F>, k: i32, z: &[(u32, F::Elem)]) -> bool {
    c.apply_d(k, z).is_empty()
}
