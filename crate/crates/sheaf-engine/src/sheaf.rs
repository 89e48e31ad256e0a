//! Sheaves as bounded complexes of projective star sheaves.
//!
//! A generator `(σ, k)` stands for the constant sheaf on the open star of the
//! cell `σ`, placed in degree `k`. Morphisms between such sheaves are scalars
//! and only exist from `St σ` to `St τ` with `τ ≤ σ`, so the differential of a
//! generator is a combination of generators of one higher degree on faces of
//! its cell. The stalk at a cell `c` is the complex spanned by generators on
//! the closed cell of `c`.

use std::collections::BTreeMap;
use std::io::Write;
use std::sync::Arc;

use cell_complex::{subcomplex, CellSet};
use exact_linalg::{axpy, normalize, scale, Field, SparseMatrix, SparseVec};
use homological::{cohomology_ranks, ChainComplex};
use serde::Serialize;

use crate::space::CellSpace;
use crate::SheafError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen {
    pub cell: u32,
    pub deg: i32,
}

#[derive(Clone, Debug)]
pub struct Sheaf<F: Field> {
    space: Arc<CellSpace>,
    field: F,
    gens: Vec<Gen>,
    diff: Vec<SparseVec<F::Elem>>,
    /// `(cell, generator)` sorted by cell.
    by_cell: Vec<(u32, u32)>,
}

impl<F: Field> Sheaf<F> {
    /// Validates degrees, face conditions and `d∘d = 0`.
    pub fn new(space: Arc<CellSpace>, field: F, gens: Vec<Gen>, diff: Vec<SparseVec<F::Elem>>) -> Result<Self, SheafError> {
        let s = Self::new_unchecked(space, field, gens, diff)?;
        s.check()?;
        Ok(s)
    }

    pub(crate) fn new_unchecked(space: Arc<CellSpace>, field: F, gens: Vec<Gen>, diff: Vec<SparseVec<F::Elem>>) -> Result<Self, SheafError> {
        if gens.len() != diff.len() {
            return Err(SheafError::Invalid("one differential column per generator".into()));
        }
        if let Some(g) = gens.iter().find(|g| g.cell as usize >= space.len()) {
            return Err(SheafError::Invalid(format!("generator on unknown cell {}", g.cell)));
        }
        let mut by_cell: Vec<(u32, u32)> = gens.iter().enumerate().map(|(i, g)| (g.cell, i as u32)).collect();
        by_cell.sort_unstable();
        Ok(Sheaf { space, field, gens, diff, by_cell })
    }

    fn check(&self) -> Result<(), SheafError> {
        let f = &self.field;
        for (g, col) in self.diff.iter().enumerate() {
            let src = self.gens[g];
            for (h, _) in col {
                let tgt = *self.gens.get(*h as usize).ok_or_else(|| SheafError::Invalid(format!("unknown target {h}")))?;
                if tgt.deg != src.deg + 1 || !self.space.is_face(tgt.cell, src.cell) {
                    return Err(SheafError::Invalid(format!("differential {g} → {h} is not a face map of degree one")));
                }
            }
            let mut dd: SparseVec<F::Elem> = Vec::new();
            for (h, c) in col {
                dd = axpy(f, &dd, c, &self.diff[*h as usize]);
            }
            if !dd.is_empty() {
                return Err(SheafError::NotAComplex(g));
            }
        }
        Ok(())
    }

    pub fn zero(space: Arc<CellSpace>, field: F) -> Self {
        Sheaf { space, field, gens: Vec::new(), diff: Vec::new(), by_cell: Vec::new() }
    }

    pub fn space(&self) -> &Arc<CellSpace> {
        &self.space
    }
    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn gens(&self) -> &[Gen] {
        &self.gens
    }
    pub fn gen(&self, g: u32) -> Gen {
        self.gens[g as usize]
    }
    pub fn diff(&self, g: u32) -> &[(u32, F::Elem)] {
        &self.diff[g as usize]
    }
    pub fn len(&self) -> usize {
        self.gens.len()
    }
    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Generators sitting on cell `c`.
    pub fn gens_at(&self, c: u32) -> impl Iterator<Item = u32> + '_ {
        let lo = self.by_cell.partition_point(|e| e.0 < c);
        self.by_cell[lo..].iter().take_while(move |e| e.0 == c).map(|e| e.1)
    }

    pub fn degree_range(&self) -> Option<(i32, i32)> {
        let lo = self.gens.iter().map(|g| g.deg).min()?;
        let hi = self.gens.iter().map(|g| g.deg).max()?;
        Some((lo, hi))
    }

    /// Incoming differential entries: `(source, coefficient)` for every target.
    pub fn incoming(&self) -> Vec<Vec<(u32, F::Elem)>> {
        let mut inc = vec![Vec::new(); self.gens.len()];
        for (g, col) in self.diff.iter().enumerate() {
            for (h, c) in col {
                inc[*h as usize].push((g as u32, c.clone()));
            }
        }
        inc
    }

    /// `F[s]`: degrees drop by `s`, the differential picks up `(−1)^s`.
    pub fn shift(&self, s: i32) -> Self {
        let gens = self.gens.iter().map(|g| Gen { cell: g.cell, deg: g.deg - s }).collect();
        let diff = if s.rem_euclid(2) == 0 {
            self.diff.clone()
        } else {
            let m1 = self.field.from_i64(-1);
            self.diff.iter().map(|c| scale(&self.field, &m1, c)).collect()
        };
        Sheaf { space: self.space.clone(), field: self.field.clone(), gens, diff, by_cell: self.by_cell.clone() }
    }

    /// `F ⊕ G` with the generators of `G` numbered after those of `F`.
    pub fn direct_sum(&self, other: &Sheaf<F>) -> Result<Self, SheafError> {
        same_space(self, other)?;
        let off = self.gens.len() as u32;
        let mut gens = self.gens.clone();
        gens.extend_from_slice(&other.gens);
        let mut diff = self.diff.clone();
        diff.extend(other.diff.iter().map(|c| c.iter().map(|(h, x)| (h + off, x.clone())).collect()));
        Self::new_unchecked(self.space.clone(), self.field.clone(), gens, diff)
    }

    /// The complex spanned by `gens` (which must be closed under the
    /// differential), graded by degree; also returns local → global indices.
    pub(crate) fn span_complex(&self, gens: &[u32]) -> (ChainComplex<F>, BTreeMap<i32, Vec<u32>>) {
        let mut by_deg: BTreeMap<i32, Vec<u32>> = BTreeMap::new();
        for &g in gens {
            by_deg.entry(self.gens[g as usize].deg).or_default().push(g);
        }
        if by_deg.is_empty() {
            return (ChainComplex::zero(self.field.clone()), by_deg);
        }
        let lo = *by_deg.keys().next().unwrap();
        let hi = *by_deg.keys().last().unwrap();
        let local: std::collections::HashMap<u32, u32> =
            by_deg.values().flat_map(|v| v.iter().enumerate().map(|(i, &g)| (g, i as u32))).collect();
        let dims: Vec<usize> = (lo..=hi).map(|k| by_deg.get(&k).map_or(0, |v| v.len())).collect();
        let diffs = (lo..hi)
            .map(|k| {
                let cols = by_deg
                    .get(&k)
                    .map(|v| {
                        v.iter()
                            .map(|&g| {
                                normalize(
                                    &self.field,
                                    self.diff[g as usize].iter().filter_map(|(h, x)| local.get(h).map(|&l| (l, x.clone()))).collect(),
                                )
                            })
                            .collect()
                    })
                    .unwrap_or_default();
                SparseMatrix::from_columns(self.field.clone(), dims[(k - lo + 1) as usize], cols).expect("valid shape")
            })
            .collect();
        (ChainComplex::new_unchecked(self.field.clone(), lo, dims, diffs).expect("valid shapes"), by_deg)
    }

    /// Generators on the closed cell of `c`.
    pub fn stalk_gens(&self, c: u32) -> Vec<u32> {
        self.space.closure(c).iter().flat_map(|&f| self.gens_at(f)).collect()
    }

    pub fn stalk_complex(&self, c: u32) -> ChainComplex<F> {
        self.span_complex(&self.stalk_gens(c)).0
    }

    /// Cohomology ranks of the stalk at `c`.
    pub fn stalk(&self, c: u32) -> BTreeMap<i32, usize> {
        cohomology_ranks(&self.stalk_complex(c))
    }

    /// Stalk ranks at every cell.
    pub fn stalk_table(&self) -> Vec<BTreeMap<i32, usize>> {
        (0..self.space.len() as u32).map(|c| if self.stalk_gens(c).is_empty() { BTreeMap::new() } else { self.stalk(c) }).collect()
    }

    /// Multiplies the whole differential by a unit; the result is isomorphic.
    pub fn rescaled(&self, u: &F::Elem) -> Self {
        let diff = self.diff.iter().map(|c| scale(&self.field, u, c)).collect();
        Sheaf { space: self.space.clone(), field: self.field.clone(), gens: self.gens.clone(), diff, by_cell: self.by_cell.clone() }
    }

    /// Pullback to a closed set (for instance a time slice), as a sheaf on
    /// the extracted subcomplex. Also returns the original id of every new cell.
    pub fn restrict(&self, a: &CellSet) -> Result<(Sheaf<F>, Vec<u32>), SheafError> {
        if !Arc::ptr_eq(a.complex(), self.space.complex()) {
            return Err(SheafError::Mismatch("cell set lives on another complex".into()));
        }
        let (sub, old) = subcomplex(a)?;
        let mut new_cell = vec![u32::MAX; self.space.len()];
        for (i, &c) in old.iter().enumerate() {
            new_cell[c as usize] = i as u32;
        }
        let keep: Vec<u32> = (0..self.gens.len() as u32).filter(|&g| a.contains(self.gens[g as usize].cell as usize)).collect();
        let mut new_gen = vec![u32::MAX; self.gens.len()];
        for (i, &g) in keep.iter().enumerate() {
            new_gen[g as usize] = i as u32;
        }
        let gens = keep.iter().map(|&g| Gen { cell: new_cell[self.gens[g as usize].cell as usize], deg: self.gens[g as usize].deg }).collect();
        let diff = keep.iter().map(|&g| self.diff[g as usize].iter().map(|(h, x)| (new_gen[*h as usize], x.clone())).collect()).collect();
        let space = CellSpace::new(Arc::new(sub));
        Ok((Sheaf::new_unchecked(space, self.field.clone(), gens, diff)?, old))
    }

    pub fn to_json(&self) -> SheafJson {
        SheafJson {
            summands: self.gens.iter().map(|g| Summand { open_star_of: g.cell, shift: -g.deg }).collect(),
            differential: self
                .diff
                .iter()
                .enumerate()
                .flat_map(|(g, col)| col.iter().map(move |(h, x)| (g as u32, *h, self.field.fmt_elem(x))))
                .collect(),
        }
    }

    /// CSV rows `cell,degree,rank` for every nonzero stalk group.
    pub fn write_stalk_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "cell,degree,rank")?;
        for (c, ranks) in self.stalk_table().iter().enumerate() {
            for (k, r) in ranks {
                writeln!(out, "{c},{k},{r}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct Summand {
    pub open_star_of: u32,
    pub shift: i32,
}

#[derive(Serialize, Debug, Clone, PartialEq)]
pub struct SheafJson {
    pub summands: Vec<Summand>,
    pub differential: Vec<(u32, u32, String)>,
}

pub(crate) fn same_space<F: Field>(a: &Sheaf<F>, b: &Sheaf<F>) -> Result<(), SheafError> {
    if !Arc::ptr_eq(&a.space, &b.space) {
        return Err(SheafError::Mismatch("sheaves live on different complexes".into()));
    }
    if a.field != b.field {
        return Err(SheafError::Mismatch("sheaves use different fields".into()));
    }
    Ok(())
}
