//! Cellular cochains.

use exact_linalg::{Field, SparseMatrix};
use homological::ChainComplex;

use crate::cellset::{is_closed, CellSet};
use crate::complex::CellComplex;
use crate::CellError;

/// Cochains supported on the cells in `members`, with `(δφ)(τ) = Σ [τ:σ] φ(σ)`.
/// For a locally closed set `S` this computes `H^*(cl S, cl S ∖ S)`.
pub fn cochains_of<F: Field>(x: &CellComplex, members: &[bool], field: F) -> ChainComplex<F> {
    let top = x.max_dim();
    let mut index = vec![u32::MAX; x.len()];
    let mut dims = vec![0usize; top + 1];
    for &c in x.cells_by_dim() {
        let c = c as usize;
        if members[c] {
            index[c] = dims[x.dim(c)] as u32;
            dims[x.dim(c)] += 1;
        }
    }
    let mut cols: Vec<Vec<Vec<(u32, F::Elem)>>> = dims.iter().map(|&n| vec![Vec::new(); n]).collect();
    for &t in x.cells_by_dim() {
        let t = t as usize;
        if !members[t] || x.dim(t) == 0 {
            continue;
        }
        for &(s, sign) in x.facets(t) {
            if members[s as usize] {
                cols[x.dim(t) - 1][index[s as usize] as usize].push((index[t], field.from_i64(sign as i64)));
            }
        }
    }
    let diffs = (0..top)
        .map(|k| {
            let columns = std::mem::take(&mut cols[k]).into_iter().map(|mut v| {
                v.sort_by_key(|e| e.0);
                v
            });
            SparseMatrix::from_columns(field.clone(), dims[k + 1], columns.collect()).expect("valid coboundary")
        })
        .collect();
    ChainComplex::new_unchecked(field, 0, dims, diffs).expect("valid shapes")
}

/// `C^*(X, A)` for a closed subcomplex `A` (`None` for the absolute complex).
pub fn relative_cochain<F: Field>(x: &CellComplex, a: Option<&CellSet>, field: F) -> Result<ChainComplex<F>, CellError> {
    let members: Vec<bool> = match a {
        None => vec![true; x.len()],
        Some(a) => {
            if !is_closed(x, a.members()) {
                return Err(CellError::NotLocallyClosed);
            }
            a.members().iter().map(|b| !b).collect()
        }
    };
    Ok(cochains_of(x, &members, field))
}
