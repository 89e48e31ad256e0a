//! Rank, reduced row echelon form, kernels and linear solving.
//!
//! Elimination is deterministic: rows are scanned from the lowest index and
//! pivots sit in the lowest available column, so results never depend on
//! hashing or thread scheduling. The reduced row echelon form is unique, so
//! the sparse and dense paths return identical answers.

use crate::field::Field;
use crate::reduce::ColumnReducer;
use crate::sparse::{axpy, densify, scale, sparsify, SparseMatrix, SparseVec};
use crate::LinalgError;

/// Tuning knobs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LinalgConfig {
    /// Matrices with at most this many entries (`rows * cols`) use dense elimination.
    pub dense_threshold: usize,
}

impl Default for LinalgConfig {
    fn default() -> Self {
        LinalgConfig { dense_threshold: 4096 }
    }
}

/// Result of row reduction: the RREF rows and their pivot columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Rref<E> {
    /// Nonzero rows of the RREF, top to bottom, as sparse rows over columns.
    pub rows: Vec<SparseVec<E>>,
    /// Pivot column of each row, strictly increasing.
    pub pivots: Vec<usize>,
    pub cols: usize,
}

pub fn rank<F: Field>(m: &SparseMatrix<F>) -> usize {
    rank_with(m, &LinalgConfig::default())
}

pub fn rank_with<F: Field>(m: &SparseMatrix<F>, cfg: &LinalgConfig) -> usize {
    if m.rows() * m.cols() <= cfg.dense_threshold {
        return dense_rref(m).pivots.len();
    }
    let mut red = ColumnReducer::new(m.field().clone(), m.rows(), false);
    for col in m.columns() {
        red.insert(col.clone());
    }
    red.rank()
}

pub fn rref<F: Field>(m: &SparseMatrix<F>) -> Rref<F::Elem> {
    rref_with(m, &LinalgConfig::default())
}

pub fn rref_with<F: Field>(m: &SparseMatrix<F>, cfg: &LinalgConfig) -> Rref<F::Elem> {
    if m.rows() * m.cols() <= cfg.dense_threshold {
        dense_rref(m)
    } else {
        sparse_rref(m)
    }
}

fn dense_rref<F: Field>(m: &SparseMatrix<F>) -> Rref<F::Elem> {
    let f = m.field();
    let mut a = m.to_dense();
    let (nr, nc) = (m.rows(), m.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let Some(p) = (r..nr).find(|&i| !f.is_zero(&a[i][c])) else { continue };
        a.swap(r, p);
        let inv = f.inv(&a[r][c]).expect("nonzero pivot");
        for x in a[r].iter_mut() {
            *x = f.mul(&inv, x);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !f.is_zero(&row[c]) {
                let k = f.neg(&row[c]);
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = f.add_mul(x, &k, y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let rows = a.into_iter().take(r).map(|row| sparsify(f, &row)).collect();
    Rref { rows, pivots, cols: nc }
}

fn sparse_rref<F: Field>(m: &SparseMatrix<F>) -> Rref<F::Elem> {
    let f = m.field();
    let t = m.transpose();
    // Echelon basis keyed by leading column.
    let mut lead_of: Vec<Option<usize>> = vec![None; m.cols()];
    let mut basis: Vec<SparseVec<F::Elem>> = Vec::new();
    for row in t.columns() {
        let mut v = row.clone();
        while let Some(&(l, ref x)) = v.first() {
            match lead_of[l as usize] {
                Some(b) => {
                    let k = f.neg(x);
                    v = axpy(f, &v, &k, &basis[b]);
                }
                None => break,
            }
        }
        if let Some(&(l, ref x)) = v.first() {
            let inv = f.inv(x).expect("nonzero lead");
            lead_of[l as usize] = Some(basis.len());
            basis.push(scale(f, &inv, &v));
        }
    }
    // Back substitution from the rightmost pivot.
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by_key(|&b| basis[b][0].0);
    for &b in order.iter().rev() {
        let mut v = std::mem::take(&mut basis[b]);
        let mut k = 1;
        while k < v.len() {
            let (c, ref x) = v[k];
            if let Some(o) = lead_of[c as usize] {
                let neg = f.neg(x);
                v = axpy(f, &v, &neg, &basis[o]);
            } else {
                k += 1;
            }
        }
        basis[b] = v;
    }
    let pivots = order.iter().map(|&b| basis[b][0].0 as usize).collect();
    let rows = order.into_iter().map(|b| std::mem::take(&mut basis[b])).collect();
    Rref { rows, pivots, cols: m.cols() }
}

/// Kernel basis: one vector per free column (ascending), with a 1 in that
/// column and `-RREF[r][free]` in the pivot column of row `r`.
pub fn kernel_basis<F: Field>(m: &SparseMatrix<F>) -> Vec<Vec<F::Elem>> {
    kernel_basis_with(m, &LinalgConfig::default())
}

pub fn kernel_basis_with<F: Field>(m: &SparseMatrix<F>, cfg: &LinalgConfig) -> Vec<Vec<F::Elem>> {
    let f = m.field();
    let r = rref_with(m, cfg);
    let mut is_pivot = vec![false; m.cols()];
    for &p in &r.pivots {
        is_pivot[p] = true;
    }
    // column -> entries (row index, value) of the RREF
    let mut by_col: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); m.cols()];
    for (i, row) in r.rows.iter().enumerate() {
        for (c, x) in row {
            by_col[*c as usize].push((i, x.clone()));
        }
    }
    (0..m.cols())
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![f.zero(); m.cols()];
            v[free] = f.one();
            for (i, x) in &by_col[free] {
                v[r.pivots[*i]] = f.neg(x);
            }
            v
        })
        .collect()
}

/// Solves `m x = b`, setting all free variables to zero.
pub fn solve<F: Field>(m: &SparseMatrix<F>, b: &[F::Elem]) -> Result<Vec<F::Elem>, LinalgError> {
    solve_with(m, b, &LinalgConfig::default())
}

pub fn solve_with<F: Field>(m: &SparseMatrix<F>, b: &[F::Elem], cfg: &LinalgConfig) -> Result<Vec<F::Elem>, LinalgError> {
    if b.len() != m.rows() {
        return Err(LinalgError::DimensionMismatch { expected: m.rows(), found: b.len() });
    }
    let f = m.field().clone();
    let mut cols: Vec<SparseVec<F::Elem>> = m.columns().to_vec();
    cols.push(sparsify(&f, b));
    let aug = SparseMatrix::from_columns(f.clone(), m.rows(), cols)?;
    let r = rref_with(&aug, cfg);
    if r.pivots.last() == Some(&m.cols()) {
        return Err(LinalgError::Inconsistent);
    }
    let mut x = vec![f.zero(); m.cols()];
    for (row, &p) in r.rows.iter().zip(&r.pivots) {
        if let Some((c, v)) = row.last() {
            if *c as usize == m.cols() {
                x[p] = v.clone();
            }
        }
    }
    Ok(x)
}

/// Solves many right-hand sides against the same matrix through one tracked
/// column reduction. Solutions are deterministic but not normalized.
pub fn solve_sparse<F: Field>(m: &SparseMatrix<F>, b: &[(u32, F::Elem)]) -> Option<SparseVec<F::Elem>> {
    let mut red = ColumnReducer::new(m.field().clone(), m.rows(), true);
    for col in m.columns() {
        red.insert(col.clone());
    }
    red.solve(b.to_vec())
}

/// Dense helper: is `m x == b`?
pub fn check_solution<F: Field>(m: &SparseMatrix<F>, x: &[F::Elem], b: &[F::Elem]) -> bool {
    match m.mul_dense(x) {
        Ok(y) => y == b,
        Err(_) => false,
    }
}

/// Converts a sparse vector to dense, re-exported for callers that mix the two.
pub fn to_dense<F: Field>(f: &F, v: &[(u32, F::Elem)], n: usize) -> Vec<F::Elem> {
    densify(f, v, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    const F2: PrimeField = PrimeField::F2;
    const SPARSE: LinalgConfig = LinalgConfig { dense_threshold: 0 };

    #[test]
    fn rank_of_all_ones_over_f2() {
        let m = SparseMatrix::from_i64_rows(F2, &[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(rank(&m), 1);
        assert_eq!(rank_with(&m, &SPARSE), 1);
    }

    #[test]
    fn kernel_of_path_matrix() {
        let m = SparseMatrix::from_i64_rows(F2, &[vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        assert_eq!(kernel_basis(&m), vec![vec![1, 1, 1]]);
        assert_eq!(kernel_basis_with(&m, &SPARSE), vec![vec![1, 1, 1]]);
    }

    #[test]
    fn solve_sets_free_variables_to_zero() {
        let m = SparseMatrix::from_i64_rows(F2, &[vec![1, 1]]).unwrap();
        assert_eq!(solve(&m, &[1]).unwrap(), vec![1, 0]);
        assert_eq!(solve_with(&m, &[1], &SPARSE).unwrap(), vec![1, 0]);
    }

    #[test]
    fn inconsistent_system() {
        let m = SparseMatrix::from_i64_rows(F2, &[vec![1, 1], vec![1, 1]]).unwrap();
        assert!(matches!(solve(&m, &[1, 0]), Err(LinalgError::Inconsistent)));
    }

    #[test]
    fn rational_kernel() {
        let q = Rationals;
        let m = SparseMatrix::from_i64_rows(q, &[vec![2, 4, 6]]).unwrap();
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 2);
        assert_eq!(k[0], vec![q.from_i64(-2), q.from_i64(1), q.from_i64(0)]);
        assert_eq!(k[1], vec![q.from_i64(-3), q.from_i64(0), q.from_i64(1)]);
    }

    #[test]
    fn sparse_solve_agrees() {
        let f = PrimeField::new(7).unwrap();
        let m = SparseMatrix::from_i64_rows(f, &[vec![1, 2, 0], vec![0, 1, 3], vec![1, 3, 3]]).unwrap();
        let b = m.mul_dense(&[1, 1, 1]).unwrap();
        let x = solve_sparse(&m, &sparsify(&f, &b)).unwrap();
        assert!(check_solution(&m, &densify(&f, &x, 3), &b));
    }
}
