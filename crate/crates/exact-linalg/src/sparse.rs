//! Column-compressed sparse matrices and sparse vectors.

use crate::field::Field;
use crate::LinalgError;

/// Sparse vector: `(index, value)` pairs, strictly increasing index, no zeros.
pub type SparseVec<E> = Vec<(u32, E)>;

/// Returns `a + c*b`.
pub fn axpy<F: Field>(f: &F, a: &[(u32, F::Elem)], c: &F::Elem, b: &[(u32, F::Elem)]) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let (ia, ib) = (a[i].0, b[j].0);
        if ia < ib {
            out.push(a[i].clone());
            i += 1;
        } else if ib < ia {
            let v = f.mul(c, &b[j].1);
            if !f.is_zero(&v) {
                out.push((ib, v));
            }
            j += 1;
        } else {
            let v = f.add_mul(&a[i].1, c, &b[j].1);
            if !f.is_zero(&v) {
                out.push((ia, v));
            }
            i += 1;
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    for (ib, vb) in &b[j..] {
        let v = f.mul(c, vb);
        if !f.is_zero(&v) {
            out.push((*ib, v));
        }
    }
    out
}

/// Sorts, merges duplicates and drops zeros.
pub fn normalize<F: Field>(f: &F, mut v: Vec<(u32, F::Elem)>) -> SparseVec<F::Elem> {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec<F::Elem> = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 = f.add(&last.1, &x),
            _ => out.push((i, x)),
        }
    }
    out.retain(|e| !f.is_zero(&e.1));
    out
}

pub fn scale<F: Field>(f: &F, c: &F::Elem, v: &[(u32, F::Elem)]) -> SparseVec<F::Elem> {
    if f.is_zero(c) {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, f.mul(c, x))).collect()
}

/// Dense to sparse.
pub fn sparsify<F: Field>(f: &F, v: &[F::Elem]) -> SparseVec<F::Elem> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !f.is_zero(x))
        .map(|(i, x)| (i as u32, x.clone()))
        .collect()
}

/// Sparse to dense of length `n`.
pub fn densify<F: Field>(f: &F, v: &[(u32, F::Elem)], n: usize) -> Vec<F::Elem> {
    let mut out = vec![f.zero(); n];
    for (i, x) in v {
        out[*i as usize] = x.clone();
    }
    out
}

/// A sparse matrix stored by columns.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec<F::Elem>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        SparseMatrix { field, rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let one = field.one();
        let columns = (0..n).map(|i| vec![(i as u32, one.clone())]).collect();
        SparseMatrix { field, rows: n, cols: n, columns }
    }

    /// Builds from unordered triplets; duplicates are summed.
    pub fn from_triplets<I>(field: F, rows: usize, cols: usize, entries: I) -> Result<Self, LinalgError>
    where
        I: IntoIterator<Item = (usize, usize, F::Elem)>,
    {
        let mut raw: Vec<Vec<(u32, F::Elem)>> = vec![Vec::new(); cols];
        for (r, c, v) in entries {
            if r >= rows || c >= cols {
                return Err(LinalgError::OutOfBounds { row: r, col: c, rows, cols });
            }
            raw[c].push((r as u32, v));
        }
        let columns = raw.into_iter().map(|v| normalize(&field, v)).collect();
        Ok(SparseMatrix { field, rows, cols, columns })
    }

    /// Builds from sparse columns; each column is normalized.
    pub fn from_columns(field: F, rows: usize, columns: Vec<SparseVec<F::Elem>>) -> Result<Self, LinalgError> {
        let cols = columns.len();
        let mut out = Vec::with_capacity(cols);
        for (c, col) in columns.into_iter().enumerate() {
            if let Some(&(r, _)) = col.iter().find(|e| e.0 as usize >= rows) {
                return Err(LinalgError::OutOfBounds { row: r as usize, col: c, rows, cols });
            }
            let sorted = col.windows(2).all(|w| w[0].0 < w[1].0) && col.iter().all(|e| !field.is_zero(&e.1));
            out.push(if sorted { col } else { normalize(&field, col) });
        }
        Ok(SparseMatrix { field, rows, cols, columns: out })
    }

    pub fn from_dense(field: F, data: &[Vec<F::Elem>]) -> Result<Self, LinalgError> {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        if data.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::Parse("ragged dense matrix".into()));
        }
        let entries = data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, v)| (r, c, v.clone())));
        Self::from_triplets(field, rows, cols, entries)
    }

    /// Integer convenience constructor, entries reduced into the field.
    pub fn from_i64_rows(field: F, data: &[Vec<i64>]) -> Result<Self, LinalgError> {
        let dense: Vec<Vec<F::Elem>> = data.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect();
        Self::from_dense(field, &dense)
    }

    pub fn to_dense(&self) -> Vec<Vec<F::Elem>> {
        let mut out = vec![vec![self.field.zero(); self.cols]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                out[*r as usize][c] = v.clone();
            }
        }
        out
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn column(&self, c: usize) -> &[(u32, F::Elem)] {
        &self.columns[c]
    }
    pub fn columns(&self) -> &[SparseVec<F::Elem>] {
        &self.columns
    }
    pub fn into_columns(self) -> Vec<SparseVec<F::Elem>> {
        self.columns
    }
    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }
    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> F::Elem {
        let col = &self.columns[c];
        match col.binary_search_by_key(&(r as u32), |e| e.0) {
            Ok(i) => col[i].1.clone(),
            Err(_) => self.field.zero(),
        }
    }

    /// Row-major sorted triplets.
    pub fn triplets(&self) -> Vec<(usize, usize, F::Elem)> {
        let mut t: Vec<(usize, usize, F::Elem)> = self
            .columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r as usize, c, v.clone())))
            .collect();
        t.sort_by_key(|e| (e.0, e.1));
        t
    }

    pub fn transpose(&self) -> Self {
        let mut cols: Vec<SparseVec<F::Elem>> = vec![Vec::new(); self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                cols[*r as usize].push((c as u32, v.clone()));
            }
        }
        SparseMatrix { field: self.field.clone(), rows: self.cols, cols: self.rows, columns: cols }
    }

    pub fn mul_vec(&self, v: &[(u32, F::Elem)]) -> SparseVec<F::Elem> {
        let mut acc: Vec<(u32, F::Elem)> = Vec::new();
        for (c, x) in v {
            for (r, y) in &self.columns[*c as usize] {
                acc.push((*r, self.field.mul(y, x)));
            }
        }
        normalize(&self.field, acc)
    }

    pub fn mul_dense(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        let s = self.mul_vec(&sparsify(&self.field, v));
        Ok(densify(&self.field, &s, self.rows))
    }

    /// `self * other`.
    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let columns = other.columns.iter().map(|col| self.mul_vec(col)).collect();
        Ok(SparseMatrix { field: self.field.clone(), rows: self.rows, cols: other.cols, columns })
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch { expected: self.rows * self.cols, found: other.rows * other.cols });
        }
        let one = self.field.one();
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| axpy(&self.field, a, &one, b))
            .collect();
        Ok(SparseMatrix { field: self.field.clone(), rows: self.rows, cols: self.cols, columns })
    }

    pub fn scaled(&self, c: &F::Elem) -> Self {
        let columns = self.columns.iter().map(|col| scale(&self.field, c, col)).collect();
        SparseMatrix { field: self.field.clone(), rows: self.rows, cols: self.cols, columns }
    }

    /// Appends a column.
    pub fn push_column(&mut self, col: SparseVec<F::Elem>) -> Result<(), LinalgError> {
        if let Some(&(r, _)) = col.iter().find(|e| e.0 as usize >= self.rows) {
            return Err(LinalgError::OutOfBounds { row: r as usize, col: self.cols, rows: self.rows, cols: self.cols + 1 });
        }
        self.columns.push(normalize(&self.field, col));
        self.cols += 1;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn triplets_merge_and_cancel() {
        let f = PrimeField::F2;
        let m = SparseMatrix::from_triplets(f, 2, 2, vec![(0, 0, 1), (0, 0, 1), (1, 1, 1)]).unwrap();
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(1, 1), 1);
        assert!(SparseMatrix::from_triplets(f, 2, 2, vec![(2, 0, 1)]).is_err());
    }

    #[test]
    fn product_matches_dense() {
        let f = PrimeField::new(5).unwrap();
        let a = SparseMatrix::from_i64_rows(f, &[vec![1, 2], vec![3, 4]]).unwrap();
        let b = SparseMatrix::from_i64_rows(f, &[vec![0, 1], vec![1, 0]]).unwrap();
        let p = a.mul(&b).unwrap();
        assert_eq!(p.to_dense(), vec![vec![2, 1], vec![4, 3]]);
        assert_eq!(a.transpose().transpose(), a);
    }
}
