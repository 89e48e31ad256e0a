//! Cones, Hom complexes and tensor products.

use exact_linalg::{Field, SparseMatrix, SparseVec};

use crate::complex::{ChainComplex, ComplexMap};

/// `cone(f)^k = C^{k+1} ⊕ D^k`, `d(a, b) = (-d_C a, f(a) + d_D b)`.
pub fn cone<F: Field>(f: &ComplexMap<F>) -> ChainComplex<F> {
    let (c, d) = (&f.source, &f.target);
    let field = c.field().clone();
    if c.total_dim() == 0 && d.total_dim() == 0 {
        return ChainComplex::zero(field);
    }
    let lo = (c.lo() - 1).min(d.lo());
    let hi = (c.hi() - 1).max(d.hi());
    let m1 = field.from_i64(-1);
    let dims: Vec<usize> = (lo..=hi).map(|k| c.dim(k + 1) + d.dim(k)).collect();
    let mut interior = Vec::new();
    for k in lo..hi {
        let (ca, da) = (c.dim(k + 1), d.dim(k));
        let dc = c.d(k + 1);
        let dd = d.d(k);
        let fk = f.component(k + 1);
        let mut cols: Vec<SparseVec<F::Elem>> = Vec::with_capacity(ca + da);
        for j in 0..ca {
            let mut col: SparseVec<F::Elem> = dc.column(j).iter().map(|(r, v)| (*r, field.mul(&m1, v))).collect();
            let off = c.dim(k + 2) as u32;
            col.extend(fk.column(j).iter().map(|(r, v)| (*r + off, v.clone())));
            cols.push(col);
        }
        for j in 0..da {
            let off = c.dim(k + 2) as u32;
            cols.push(dd.column(j).iter().map(|(r, v)| (*r + off, v.clone())).collect());
        }
        interior.push(SparseMatrix::from_columns(field.clone(), dims[(k - lo + 1) as usize], cols).expect("shape"));
    }
    ChainComplex::new(field, lo, dims, interior).expect("cone of a chain map is a complex")
}

/// `cocone(f) = cone(f)[-1]`.
pub fn cocone<F: Field>(f: &ComplexMap<F>) -> ChainComplex<F> {
    cone(f).shift(-1)
}

/// Basis bookkeeping for `Hom(C, D)^k = ⊕_j Hom(C^j, D^{j+k})`.
/// Within a block, the map `E_{r,c}` has index `c * dim D^{j+k} + r`.
fn hom_offsets<F: Field>(c: &ChainComplex<F>, d: &ChainComplex<F>, k: i32) -> Vec<(i32, usize)> {
    let mut off = 0;
    let mut out = Vec::new();
    for j in c.degrees() {
        out.push((j, off));
        off += c.dim(j) * d.dim(j + k);
    }
    out.push((i32::MAX, off));
    out
}

/// Total Hom complex with `Dφ = d_D φ - (-1)^k φ d_C`.
pub fn hom_complex<F: Field>(c: &ChainComplex<F>, d: &ChainComplex<F>) -> ChainComplex<F> {
    let field = c.field().clone();
    if c.total_dim() == 0 || d.total_dim() == 0 {
        return ChainComplex::zero(field);
    }
    let lo = d.lo() - c.hi();
    let hi = d.hi() - c.lo();
    let offs: Vec<Vec<(i32, usize)>> = (lo..=hi + 1).map(|k| hom_offsets(c, d, k)).collect();
    let dims: Vec<usize> = (lo..=hi).map(|k| offs[(k - lo) as usize].last().unwrap().1).collect();
    let mut interior = Vec::new();
    for k in lo..hi {
        let src = &offs[(k - lo) as usize];
        let dst = &offs[(k - lo + 1) as usize];
        let sign = if k.rem_euclid(2) == 0 { field.from_i64(-1) } else { field.one() };
        let mut cols: Vec<SparseVec<F::Elem>> = Vec::with_capacity(dims[(k - lo) as usize]);
        for (bi, &(j, _)) in src[..src.len() - 1].iter().enumerate() {
            let _ = bi;
            let rows_d = d.dim(j + k);
            let dd = d.d(j + k);
            let dc = c.d(j - 1);
            let dst_same = dst.iter().find(|e| e.0 == j).map(|e| e.1);
            let dst_prev = dst.iter().find(|e| e.0 == j - 1).map(|e| e.1);
            let dd_rows = d.dim(j + k + 1);
            // Transpose of d_C^{j-1}: for column c of C^j, the sources c' with d_C[c, c'] != 0.
            let dct = dc.transpose();
            for cc in 0..c.dim(j) {
                for r in 0..rows_d {
                    let mut col: Vec<(u32, F::Elem)> = Vec::new();
                    if let Some(base) = dst_same {
                        for (r2, v) in dd.column(r) {
                            col.push(((base + cc * dd_rows + *r2 as usize) as u32, v.clone()));
                        }
                    }
                    if let Some(base) = dst_prev {
                        // φ∘d_C lands in block j-1 whose target is D^{j+k} as well.
                        for (c2, v) in dct.column(cc) {
                            col.push(((base + *c2 as usize * rows_d + r) as u32, field.mul(&sign, v)));
                        }
                    }
                    cols.push(col);
                }
            }
        }
        let m = SparseMatrix::from_columns(field.clone(), dims[(k - lo + 1) as usize], cols).expect("shape");
        interior.push(m);
    }
    ChainComplex::new(field, lo, dims, interior).expect("Hom complex squares to zero")
}

/// Index of the basis map `E_{r,c}: C^j → D^{j+k}` inside `Hom(C,D)^k`.
pub fn hom_index<F: Field>(c: &ChainComplex<F>, d: &ChainComplex<F>, k: i32, j: i32, r: usize, col: usize) -> usize {
    let offs = hom_offsets(c, d, k);
    let base = offs.iter().find(|e| e.0 == j).expect("degree in range").1;
    base + col * d.dim(j + k) + r
}

/// Interprets a degree-0 cocycle of `Hom(C, D)` as a chain map.
pub fn map_from_hom_cocycle<F: Field>(c: &ChainComplex<F>, d: &ChainComplex<F>, v: &[(u32, F::Elem)]) -> ComplexMap<F> {
    let field = c.field().clone();
    let offs = hom_offsets(c, d, 0);
    let comps = c
        .degrees()
        .map(|j| {
            let base = offs.iter().find(|e| e.0 == j).unwrap().1;
            let rows = d.dim(j);
            let size = rows * c.dim(j);
            let t = v
                .iter()
                .filter(|(i, _)| (*i as usize) >= base && (*i as usize) < base + size)
                .map(|(i, x)| {
                    let l = *i as usize - base;
                    (l % rows, l / rows, x.clone())
                });
            SparseMatrix::from_triplets(field.clone(), rows, c.dim(j), t).unwrap()
        })
        .collect();
    ComplexMap::new(c.clone(), d.clone(), comps).expect("cocycles are chain maps")
}

/// `(C ⊗ D)^k = ⊕_i C^i ⊗ D^{k-i}`, `d(a⊗b) = da⊗b + (-1)^i a⊗db`.
pub fn tensor<F: Field>(c: &ChainComplex<F>, d: &ChainComplex<F>) -> ChainComplex<F> {
    let field = c.field().clone();
    if c.total_dim() == 0 || d.total_dim() == 0 {
        return ChainComplex::zero(field);
    }
    let lo = c.lo() + d.lo();
    let hi = c.hi() + d.hi();
    let offsets = |k: i32| -> Vec<(i32, usize)> {
        let mut off = 0;
        let mut out = Vec::new();
        for i in c.degrees() {
            out.push((i, off));
            off += c.dim(i) * d.dim(k - i);
        }
        out.push((i32::MAX, off));
        out
    };
    let offs: Vec<Vec<(i32, usize)>> = (lo..=hi + 1).map(offsets).collect();
    let dims: Vec<usize> = (lo..=hi).map(|k| offs[(k - lo) as usize].last().unwrap().1).collect();
    let mut interior = Vec::new();
    for k in lo..hi {
        let dst = &offs[(k - lo + 1) as usize];
        let find = |i: i32| dst.iter().find(|e| e.0 == i).map(|e| e.1);
        let mut cols = Vec::new();
        for i in c.degrees() {
            let (dc, dd) = (c.d(i), d.d(k - i));
            let sign = if i.rem_euclid(2) == 0 { field.one() } else { field.from_i64(-1) };
            let nb = d.dim(k - i);
            let nb_next = d.dim(k - i + 1);
            for a in 0..c.dim(i) {
                for b in 0..nb {
                    let mut col = Vec::new();
                    if let Some(base) = find(i + 1) {
                        for (a2, v) in dc.column(a) {
                            col.push(((base + *a2 as usize * nb) as u32 + b as u32, v.clone()));
                        }
                    }
                    if let Some(base) = find(i) {
                        for (b2, v) in dd.column(b) {
                            col.push(((base + a * nb_next + *b2 as usize) as u32, field.mul(&sign, v)));
                        }
                    }
                    cols.push(col);
                }
            }
        }
        interior.push(SparseMatrix::from_columns(field.clone(), dims[(k - lo + 1) as usize], cols).expect("shape"));
    }
    ChainComplex::new(field, lo, dims, interior).expect("tensor product squares to zero")
}
