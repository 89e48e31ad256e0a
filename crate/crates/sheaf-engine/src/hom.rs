//! Hom complexes between sheaves, Ext groups and morphisms.
//!
//! `Hom(K_{St σ}, G)` is the stalk of `G` at `σ`, so a degree-`k` basis vector
//! is a pair `(g, h)` of a source generator and a target generator of degree
//! `deg g + k` sitting on a face of the cell of `g`. The differential is
//! `Dφ = d_G φ − (−1)^k φ d_F`.

use std::collections::BTreeMap;
use std::sync::Arc;

use exact_linalg::{axpy, normalize, ColumnReducer, Field, SparseMatrix, SparseVec};
use homological::{cohomology_basis, cohomology_ranks, ChainComplex};

use crate::resolve::constant_whole;
use crate::sheaf::{same_space, Sheaf};
use crate::SheafError;

/// Basis of one degree: for source generator `g`, targets
/// `targets[offsets[g]..offsets[g + 1]]` (sorted).
#[derive(Clone, Debug, Default)]
struct Block {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Block {
    fn index(&self, g: u32, h: u32) -> Option<usize> {
        let (a, b) = (self.offsets[g as usize], self.offsets[g as usize + 1]);
        self.targets[a..b].binary_search(&h).ok().map(|i| a + i)
    }

    fn pair(&self, i: usize) -> (u32, u32) {
        let g = self.offsets.partition_point(|&o| o <= i) - 1;
        (g as u32, self.targets[i])
    }
}

pub struct HomComplex<F: Field> {
    lo: i32,
    blocks: Vec<Block>,
    complex: ChainComplex<F>,
}

impl<F: Field> HomComplex<F> {
    pub fn new(src: &Sheaf<F>, tgt: &Sheaf<F>) -> Result<Self, SheafError> {
        same_space(src, tgt)?;
        let field = src.field().clone();
        let (Some((slo, shi)), Some((tlo, thi))) = (src.degree_range(), tgt.degree_range()) else {
            return Ok(HomComplex { lo: 0, blocks: Vec::new(), complex: ChainComplex::zero(field) });
        };
        let lo = tlo - shi;
        let hi = thi - slo;
        let nb = (hi - lo + 1) as usize;
        let mut blocks: Vec<Block> = vec![Block { offsets: vec![0], targets: Vec::new() }; nb];
        let mut buf: Vec<(i32, u32)> = Vec::new();
        for g in 0..src.len() as u32 {
            let sg = src.gen(g);
            buf.clear();
            for h in tgt.stalk_gens(sg.cell) {
                buf.push((tgt.gen(h).deg - sg.deg, h));
            }
            buf.sort_unstable();
            for &(k, h) in &buf {
                blocks[(k - lo) as usize].targets.push(h);
            }
            for b in &mut blocks {
                b.offsets.push(b.targets.len());
            }
        }
        let incoming = src.incoming();
        let m1 = field.from_i64(-1);
        let dims: Vec<usize> = blocks.iter().map(|b| b.targets.len()).collect();
        let mut mats = Vec::with_capacity(nb.saturating_sub(1));
        for k in lo..hi {
            let (cur, next) = (&blocks[(k - lo) as usize], &blocks[(k - lo + 1) as usize]);
            let sign = if k.rem_euclid(2) == 0 { m1.clone() } else { field.one() };
            let mut cols = Vec::with_capacity(cur.targets.len());
            for g in 0..src.len() as u32 {
                for i in cur.offsets[g as usize]..cur.offsets[g as usize + 1] {
                    let h = cur.targets[i];
                    let mut col: Vec<(u32, F::Elem)> = Vec::new();
                    for (h2, c) in tgt.diff(h) {
                        col.push((next.index(g, *h2).expect("faces stay in the stalk") as u32, c.clone()));
                    }
                    for (g2, c) in &incoming[g as usize] {
                        col.push((next.index(*g2, h).expect("faces stay in the stalk") as u32, field.mul(&sign, c)));
                    }
                    cols.push(normalize(&field, col));
                }
            }
            mats.push(SparseMatrix::from_columns(field.clone(), next.targets.len(), cols).expect("valid shape"));
        }
        let complex = ChainComplex::new_unchecked(field, lo, dims, mats)?;
        Ok(HomComplex { lo, blocks, complex })
    }

    pub fn complex(&self) -> &ChainComplex<F> {
        &self.complex
    }

    pub fn ranks(&self) -> BTreeMap<i32, usize> {
        cohomology_ranks(&self.complex)
    }

    /// Reads a degree-`k` cochain as the generator-wise map it describes.
    pub fn to_map(&self, k: i32, v: &[(u32, F::Elem)], nsrc: usize) -> Vec<SparseVec<F::Elem>> {
        let mut map = vec![Vec::new(); nsrc];
        if k < self.lo || k >= self.lo + self.blocks.len() as i32 {
            return map;
        }
        let b = &self.blocks[(k - self.lo) as usize];
        for (i, c) in v {
            let (g, h) = b.pair(*i as usize);
            map[g as usize].push((h, c.clone()));
        }
        for col in &mut map {
            col.sort_by_key(|e| e.0);
        }
        map
    }

    /// The scalar `c` with `a ≡ c·b` modulo coboundaries, for degree-`k`
    /// cocycles; `None` if `b` is exact or `a` is not a multiple of `b`.
    pub fn class_ratio(&self, k: i32, a: &[(u32, F::Elem)], b: &[(u32, F::Elem)]) -> Option<F::Elem> {
        let f = self.complex.field().clone();
        let mut red = ColumnReducer::new(f.clone(), self.complex.dim(k), false);
        if let Some(d) = self.complex.d_ref(k - 1) {
            for col in d.columns() {
                red.insert(col.clone());
            }
        }
        let (ra, _) = red.reduce_full(a.to_vec());
        let (rb, _) = red.reduce_full(b.to_vec());
        let (i, x) = rb.first()?;
        let c = match ra.iter().find(|e| e.0 == *i) {
            Some((_, y)) => f.mul(y, &f.inv(x)?),
            None => f.zero(),
        };
        (axpy(&f, &ra, &f.neg(&c), &rb).is_empty()).then_some(c)
    }

    /// Inverse of [`HomComplex::to_map`]; `None` if a component leaves the stalk.
    pub fn to_cochain(&self, k: i32, map: &[SparseVec<F::Elem>]) -> Option<SparseVec<F::Elem>> {
        if map.iter().all(|c| c.is_empty()) {
            return Some(Vec::new());
        }
        if k < self.lo || k >= self.lo + self.blocks.len() as i32 {
            return None;
        }
        let b = &self.blocks[(k - self.lo) as usize];
        let mut v = Vec::new();
        for (g, col) in map.iter().enumerate() {
            for (h, c) in col {
                v.push((b.index(g as u32, *h)? as u32, c.clone()));
            }
        }
        v.sort_by_key(|e| e.0);
        Some(v)
    }
}

/// `Hom(F, G)` as a cochain complex.
pub fn hom_sheaf<F: Field>(src: &Sheaf<F>, tgt: &Sheaf<F>) -> Result<ChainComplex<F>, SheafError> {
    Ok(HomComplex::new(src, tgt)?.complex)
}

/// `rank Ext^k(F, G)` for every degree where it is nonzero.
pub fn ext_ranks<F: Field>(src: &Sheaf<F>, tgt: &Sheaf<F>) -> Result<BTreeMap<i32, usize>, SheafError> {
    Ok(HomComplex::new(src, tgt)?.ranks())
}

/// Ranks of sheaf cohomology `H^k(X; F)`.
pub fn global_sections<F: Field>(f: &Sheaf<F>) -> Result<BTreeMap<i32, usize>, SheafError> {
    ext_ranks(&constant_whole(f.space(), f.field()), f)
}

/// A chain map `source → target[degree]`, one image column per source generator.
#[derive(Clone, Debug)]
pub struct SheafMorphism<F: Field> {
    pub source: Arc<Sheaf<F>>,
    pub target: Arc<Sheaf<F>>,
    pub degree: i32,
    pub map: Vec<SparseVec<F::Elem>>,
}

impl<F: Field> SheafMorphism<F> {
    /// Checks faces, degrees and `d_G φ = (−1)^k φ d_F`.
    pub fn new(source: Arc<Sheaf<F>>, target: Arc<Sheaf<F>>, degree: i32, map: Vec<SparseVec<F::Elem>>) -> Result<Self, SheafError> {
        same_space(&source, &target)?;
        if map.len() != source.len() {
            return Err(SheafError::InvalidMorphism("one image per source generator".into()));
        }
        let m = SheafMorphism { source, target, degree, map };
        m.check()?;
        Ok(m)
    }

    fn check(&self) -> Result<(), SheafError> {
        let (s, t, f) = (&self.source, &self.target, self.source.field());
        for (g, col) in self.map.iter().enumerate() {
            let sg = s.gen(g as u32);
            for (h, _) in col {
                if *h as usize >= t.len() {
                    return Err(SheafError::InvalidMorphism(format!("unknown target generator {h}")));
                }
                let th = t.gen(*h);
                if th.deg != sg.deg + self.degree || !s.space().is_face(th.cell, sg.cell) {
                    return Err(SheafError::InvalidMorphism(format!("component {g} → {h} is not allowed")));
                }
            }
            let mut lhs: SparseVec<F::Elem> = Vec::new();
            for (h, c) in col {
                lhs = axpy(f, &lhs, c, t.diff(*h));
            }
            let sign = f.from_i64(if self.degree.rem_euclid(2) == 0 { -1 } else { 1 });
            for (g2, c) in s.diff(g as u32) {
                lhs = axpy(f, &lhs, &f.mul(&sign, c), &self.map[*g2 as usize]);
            }
            if !lhs.is_empty() {
                return Err(SheafError::InvalidMorphism(format!("not a chain map at generator {g}")));
            }
        }
        Ok(())
    }

    /// Multiplies by a scalar.
    pub fn scaled(&self, c: &F::Elem) -> Self {
        let f = self.source.field();
        let map = self.map.iter().map(|col| exact_linalg::scale(f, c, col)).collect();
        SheafMorphism { map, ..self.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.map.iter().all(|c| c.is_empty())
    }

    /// Is the morphism null-homotopic, i.e. zero in `Ext^degree`?
    pub fn is_null(&self) -> Result<bool, SheafError> {
        let h = HomComplex::new(&self.source, &self.target)?;
        let v = h.to_cochain(self.degree, &self.map).ok_or_else(|| SheafError::InvalidMorphism("leaves the stalk".into()))?;
        Ok(homological::solve_coboundary(&h.complex, self.degree, &v).is_some())
    }
}

/// The `index`-th basis class of `Ext^degree(F, G)` as an explicit chain map.
pub fn lift_ext_class<F: Field>(src: &Arc<Sheaf<F>>, tgt: &Arc<Sheaf<F>>, degree: i32, index: usize) -> Result<SheafMorphism<F>, SheafError> {
    let h = HomComplex::new(src, tgt)?;
    let basis = cohomology_basis(&h.complex, degree);
    let v = basis.get(index).ok_or(SheafError::NoClass { degree, index })?;
    let map = h.to_map(degree, v, src.len());
    Ok(SheafMorphism { source: src.clone(), target: tgt.clone(), degree, map })
}

/// `ψ ∘ φ`.
pub fn compose<F: Field>(psi: &SheafMorphism<F>, phi: &SheafMorphism<F>) -> Result<SheafMorphism<F>, SheafError> {
    if !Arc::ptr_eq(&phi.target, &psi.source) && phi.target.gens() != psi.source.gens() {
        return Err(SheafError::Mismatch("morphisms are not composable".into()));
    }
    let f = phi.source.field();
    let map = phi
        .map
        .iter()
        .map(|col| col.iter().fold(Vec::new(), |acc, (h, c)| axpy(f, &acc, c, &psi.map[*h as usize])))
        .collect();
    Ok(SheafMorphism { source: phi.source.clone(), target: psi.target.clone(), degree: phi.degree + psi.degree, map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::CellSpace;
    use cell_complex::{circle, sphere2, CellSet};
    use exact_linalg::{PrimeField, Rationals};

    #[test]
    fn sphere_cohomology() {
        let space = CellSpace::new(Arc::new(sphere2(1).unwrap()));
        let k = constant_whole(&space, &Rationals);
        assert_eq!(global_sections(&k).unwrap(), BTreeMap::from([(0, 1), (2, 1)]));
    }

    #[test]
    fn self_ext_of_circle_and_identity_lift() {
        let space = CellSpace::new(Arc::new(circle(5).unwrap()));
        let k = Arc::new(constant_whole(&space, &PrimeField::F2));
        assert_eq!(ext_ranks(&k, &k).unwrap(), BTreeMap::from([(0, 1), (1, 1)]));
        let id = lift_ext_class(&k, &k, 0, 0).unwrap();
        SheafMorphism::new(k.clone(), k.clone(), 0, id.map.clone()).unwrap();
        assert!(!id.is_null().unwrap());
        assert!(matches!(lift_ext_class(&k, &k, 3, 0), Err(SheafError::NoClass { .. })));
    }

    #[test]
    fn compactly_supported_cohomology_of_open_arc() {
        let x = Arc::new(circle(6).unwrap());
        let space = CellSpace::new(x.clone());
        let u = CellSet::star_of_cells(x.clone(), &[1]);
        let ku = constant_on_f2(&space, &u);
        let k = constant_whole(&space, &PrimeField::F2);
        // RΓ(X; j_! K_U) is compactly supported cohomology of an open arc.
        assert_eq!(ext_ranks(&k, &ku).unwrap(), BTreeMap::from([(1, 1)]));
        // Hom(K_U, K_X) = RΓ(U; K).
        assert_eq!(ext_ranks(&ku, &k).unwrap(), BTreeMap::from([(0, 1)]));
    }

    fn constant_on_f2(space: &Arc<CellSpace>, z: &CellSet) -> Sheaf<PrimeField> {
        crate::resolve::constant_on(space, &PrimeField::F2, z).unwrap()
    }
}
