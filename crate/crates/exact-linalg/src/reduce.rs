//! Incremental column reduction.
//!
//! Columns are inserted left to right; each is reduced against the stored
//! columns by repeatedly cancelling its lowest row index. A column either
//! acquires a fresh pivot (its lowest surviving row) or reduces to zero.
//! With tracking enabled every stored column remembers the combination of
//! inserted columns it equals, which gives solving and kernel vectors.

use crate::field::Field;
use crate::sparse::{axpy, SparseVec};

const NONE: u32 = u32::MAX;

/// Outcome of inserting one column.
#[derive(Clone, Debug, PartialEq)]
pub enum Insert<E> {
    /// The reduced column has this pivot row.
    Pivot(usize),
    /// The column reduced to zero. With tracking, the combination of inserted
    /// column ids that vanishes (it includes the new column with coefficient 1).
    Zero(Option<SparseVec<E>>),
}

#[derive(Clone, Debug)]
struct Stored<E> {
    col: SparseVec<E>,
    combo: Option<SparseVec<E>>,
}

/// Left-to-right column reducer with lowest-row pivots.
#[derive(Clone, Debug)]
pub struct ColumnReducer<F: Field> {
    field: F,
    pivot_of_row: Vec<u32>,
    stored: Vec<Stored<F::Elem>>,
    track: bool,
    inserted: usize,
}

impl<F: Field> ColumnReducer<F> {
    pub fn new(field: F, rows: usize, track: bool) -> Self {
        ColumnReducer { field, pivot_of_row: vec![NONE; rows], stored: Vec::new(), track, inserted: 0 }
    }

    pub fn rank(&self) -> usize {
        self.stored.len()
    }

    /// Number of columns inserted so far; the next column gets this id.
    pub fn inserted(&self) -> usize {
        self.inserted
    }

    pub fn is_pivot_row(&self, r: usize) -> bool {
        self.pivot_of_row[r] != NONE
    }

    /// Rows that carry a pivot, ascending.
    pub fn pivot_rows(&self) -> Vec<usize> {
        (0..self.pivot_of_row.len()).filter(|&r| self.pivot_of_row[r] != NONE).collect()
    }

    /// Reduces `v`; returns the residual and (with tracking) the combination of
    /// inserted columns that was subtracted, i.e. `v = residual + M*combo`.
    pub fn reduce(&self, v: SparseVec<F::Elem>) -> (SparseVec<F::Elem>, SparseVec<F::Elem>) {
        let f = &self.field;
        let mut res = v;
        let mut combo: SparseVec<F::Elem> = Vec::new();
        while let Some(&(lead, ref val)) = res.first() {
            let s = self.pivot_of_row[lead as usize];
            if s == NONE {
                break;
            }
            let st = &self.stored[s as usize];
            let pv = &st.col[0].1;
            let c = f.mul(val, &f.inv(pv).expect("pivot is nonzero"));
            let negc = f.neg(&c);
            res = axpy(f, &res, &negc, &st.col);
            if let Some(sc) = &st.combo {
                combo = axpy(f, &combo, &c, sc);
            }
        }
        (res, combo)
    }

    /// Reduces a column completely: every entry sitting on a pivot row is cancelled.
    pub fn reduce_full(&self, v: SparseVec<F::Elem>) -> (SparseVec<F::Elem>, SparseVec<F::Elem>) {
        let f = &self.field;
        let mut res = v;
        let mut combo: SparseVec<F::Elem> = Vec::new();
        let mut k = 0;
        while k < res.len() {
            let (row, ref val) = res[k];
            let s = self.pivot_of_row[row as usize];
            if s == NONE {
                k += 1;
                continue;
            }
            let st = &self.stored[s as usize];
            let c = f.mul(val, &f.inv(&st.col[0].1).expect("pivot is nonzero"));
            res = axpy(f, &res, &f.neg(&c), &st.col);
            if let Some(sc) = &st.combo {
                combo = axpy(f, &combo, &c, sc);
            }
            // entries before position k are unaffected: stored columns start at their pivot
        }
        (res, combo)
    }

    /// Inserts the next column.
    pub fn insert(&mut self, v: SparseVec<F::Elem>) -> Insert<F::Elem> {
        let id = self.inserted as u32;
        self.inserted += 1;
        let (res, combo) = self.reduce(v);
        let f = &self.field;
        if res.is_empty() {
            if self.track {
                // v - M*combo = 0  =>  e_id - combo is a kernel vector.
                let neg: SparseVec<F::Elem> = combo.iter().map(|(i, x)| (*i, f.neg(x))).collect();
                let kv = axpy(f, &neg, &f.one(), &[(id, f.one())]);
                return Insert::Zero(Some(kv));
            }
            return Insert::Zero(None);
        }
        let lead = res[0].0 as usize;
        let combo = if self.track {
            let neg: SparseVec<F::Elem> = combo.iter().map(|(i, x)| (*i, f.neg(x))).collect();
            Some(axpy(f, &neg, &f.one(), &[(id, f.one())]))
        } else {
            None
        };
        self.pivot_of_row[lead] = self.stored.len() as u32;
        self.stored.push(Stored { col: res, combo });
        Insert::Pivot(lead)
    }

    /// Skips a column id without storing anything (used when a column is
    /// known in advance to reduce to zero or to be irrelevant).
    pub fn skip(&mut self) {
        self.inserted += 1;
    }

    /// Solves `M x = b` for the inserted columns `M`. Requires tracking.
    pub fn solve(&self, b: SparseVec<F::Elem>) -> Option<SparseVec<F::Elem>> {
        assert!(self.track, "solve needs a tracking reducer");
        let (res, combo) = self.reduce(b);
        if res.is_empty() {
            Some(combo)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn detects_dependency_and_solves() {
        let f = PrimeField::new(3).unwrap();
        let mut r = ColumnReducer::new(f, 3, true);
        assert_eq!(r.insert(vec![(0, 1), (1, 1)]), Insert::Pivot(0));
        assert_eq!(r.insert(vec![(1, 1), (2, 1)]), Insert::Pivot(1));
        // col2 = col0 + col1
        match r.insert(vec![(0, 1), (1, 2), (2, 1)]) {
            Insert::Zero(Some(k)) => assert_eq!(k, vec![(0, 2), (1, 2), (2, 1)]),
            other => panic!("{other:?}"),
        }
        let x = r.solve(vec![(0, 1), (2, 2)]).unwrap();
        // x0*c0 + x1*c1 = (1, x0+x1, x1) = (1,0,2)
        assert_eq!(x, vec![(0, 1), (1, 2)]);
        assert!(r.solve(vec![(2, 1)]).is_none());
    }
}
