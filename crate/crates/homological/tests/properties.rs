use std::collections::BTreeMap;

use exact_linalg::{kernel_basis, Field, PrimeField, SparseMatrix};
use homological::*;
use proptest::prelude::*;

fn fp(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

/// Cellular cochains of an m-gon: d(v_i) = e_i - e_{i-1}.
fn circle(f: PrimeField, m: usize) -> ChainComplex<PrimeField> {
    let mut t = Vec::new();
    for i in 0..m {
        t.push((i, i, f.from_i64(-1)));
        t.push((i, (i + 1) % m, f.one()));
    }
    let d = SparseMatrix::from_triplets(f, m, m, t).unwrap();
    ChainComplex::new(f, 0, vec![m, m], vec![d]).unwrap()
}

/// A complex with prescribed cohomology `h` plus `acyc[k]` acyclic pairs in
/// degrees (k, k+1), disguised by elementary basis changes.
fn disguised(f: PrimeField, lo: i32, h: &[usize], acyc: &[usize], ops: &[(usize, usize, usize, i64)]) -> ChainComplex<PrimeField> {
    let n = h.len();
    let mut dims = vec![0usize; n];
    for k in 0..n {
        dims[k] += h[k];
        if k + 1 < n {
            dims[k] += acyc[k];
            dims[k + 1] += acyc[k];
        }
    }
    // dense differentials, d[k]: dims[k+1] x dims[k]
    let mut d: Vec<Vec<Vec<i64>>> = (0..n.saturating_sub(1)).map(|k| vec![vec![0; dims[k]]; dims[k + 1]]).collect();
    let mut used = vec![0usize; n];
    for k in 0..n {
        used[k] += h[k];
    }
    for k in 0..n.saturating_sub(1) {
        for _ in 0..acyc[k] {
            let (src, dst) = (used[k], used[k + 1]);
            d[k][dst][src] = 1;
            used[k] += 1;
            used[k + 1] += 1;
        }
    }
    let p = f.characteristic() as i64;
    for &(deg, i, j, lam) in ops {
        let k = deg % n;
        if dims[k] < 2 {
            continue;
        }
        let (i, j) = (i % dims[k], j % dims[k]);
        if i == j {
            continue;
        }
        // new basis e_j' = e_j + lam e_i in degree k
        if k + 1 < n {
            for row in d[k].iter_mut() {
                row[j] = (row[j] + lam * row[i]).rem_euclid(p);
            }
        }
        if k > 0 {
            let (ri, rj) = (d[k - 1][i].clone(), d[k - 1][j].clone());
            for c in 0..ri.len() {
                d[k - 1][i][c] = (ri[c] - lam * rj[c]).rem_euclid(p);
            }
        }
    }
    let interior = d.iter().enumerate().map(|(k, m)| dense(f, m, dims[k + 1], dims[k])).collect();
    ChainComplex::new(f, lo, dims, interior).unwrap()
}

fn dense(f: PrimeField, m: &[Vec<i64>], rows: usize, cols: usize) -> SparseMatrix<PrimeField> {
    let t = (0..rows).flat_map(|r| (0..cols).map(move |c| (r, c))).map(|(r, c)| (r, c, f.from_i64(m[r][c])));
    SparseMatrix::from_triplets(f, rows, cols, t).unwrap()
}

fn expected(lo: i32, h: &[usize]) -> BTreeMap<i32, usize> {
    h.iter().enumerate().filter(|(_, &r)| r > 0).map(|(k, &r)| (lo + k as i32, r)).collect()
}

fn complex_strategy() -> impl Strategy<Value = (i32, Vec<usize>, Vec<usize>, Vec<(usize, usize, usize, i64)>)> {
    (1usize..4).prop_flat_map(|n| {
        (
            -2i32..3,
            proptest::collection::vec(0usize..3, n),
            proptest::collection::vec(0usize..3, n),
            proptest::collection::vec((0usize..8, 0usize..8, 0usize..8, 1i64..5), 0..30),
        )
    })
}

#[test]
fn point_and_circle() {
    let f = PrimeField::F2;
    let pt = ChainComplex::concentrated(f, 0, 1);
    assert_eq!(cohomology_ranks(&pt), BTreeMap::from([(0, 1)]));
    for m in 3..8 {
        assert_eq!(cohomology_ranks(&circle(f, m)), BTreeMap::from([(0, 1), (1, 1)]));
    }
}

#[test]
fn shift_translates_and_composes() {
    let f = fp(3);
    let c = circle(f, 5);
    assert_eq!(c.shift(0), c);
    assert_eq!(c.shift(2).shift(-5), c.shift(-3));
    let pt = ChainComplex::concentrated(f, 0, 1).shift(4);
    assert_eq!(cohomology_ranks(&pt), BTreeMap::from([(-4, 1)]));
    for k in -3..4 {
        let want: BTreeMap<i32, usize> = cohomology_ranks(&c).into_iter().map(|(d, r)| (d - k, r)).collect();
        assert_eq!(cohomology_ranks(&c.shift(k)), want);
    }
}

#[test]
fn cone_of_identity_and_zero() {
    let f = fp(5);
    let c = circle(f, 4);
    assert!(cohomology_ranks(&cone(&ComplexMap::identity(&c))).is_empty());
    let d = ChainComplex::concentrated(f, 1, 2);
    let z = cone(&ComplexMap::zero(&c, &d));
    // D ⊕ C[1]
    assert_eq!(cohomology_ranks(&z), BTreeMap::from([(-1, 1), (0, 1), (1, 2)]));
    assert_eq!(cocone(&ComplexMap::zero(&c, &d)), z.shift(-1));
}

#[test]
fn hom_into_field_dualizes_circle() {
    let f = fp(7);
    let c = circle(f, 6);
    let k0 = ChainComplex::concentrated(f, 0, 1);
    assert_eq!(cohomology_ranks(&hom_complex(&c, &k0)), BTreeMap::from([(-1, 1), (0, 1)]));
    assert_eq!(cohomology_ranks(&hom_complex(&k0, &k0)), BTreeMap::from([(0, 1)]));
}

#[test]
fn tensor_examples() {
    let f = PrimeField::F2;
    let c = circle(f, 3);
    let k0 = ChainComplex::concentrated(f, 0, 1);
    assert_eq!(cohomology_ranks(&tensor(&c, &k0)), cohomology_ranks(&c));
    assert_eq!(cohomology_ranks(&tensor(&c, &c)), BTreeMap::from([(0, 1), (1, 2), (2, 1)]));
    // circle ⊗ (pair concentrated in degree 1)[-1]
    let pair = ChainComplex::concentrated(f, 1, 1).shift(-1);
    assert_eq!(cohomology_ranks(&tensor(&c, &pair)), BTreeMap::from([(2, 1), (3, 1)]));
}

#[test]
fn dump_roundtrip() {
    let f = fp(3);
    let c = circle(f, 5).shift(3);
    let dir = tempfile::tempdir().unwrap();
    write_complex(&c, dir.path()).unwrap();
    assert_eq!(read_complex(f, dir.path()).unwrap(), c);
}

#[test]
fn rejects_non_complexes() {
    let f = PrimeField::F2;
    let a = SparseMatrix::from_i64_rows(f, &[vec![1]]).unwrap();
    assert!(ChainComplex::new(f, 0, vec![1, 1, 1], vec![a.clone(), a]).is_err());
}

proptest! {
    #[test]
    fn ranks_match_construction((lo, h, acyc, ops) in complex_strategy()) {
        let f = fp(5);
        let c = disguised(f, lo, &h, &acyc, &ops);
        prop_assert_eq!(cohomology_ranks(&c), expected(lo, &h));
        for k in c.degrees() {
            let basis = cohomology_basis(&c, k);
            prop_assert_eq!(basis.len(), h[(k - lo) as usize]);
            for z in &basis {
                prop_assert!(is_cocycle(&c, k, z));
                prop_assert!(solve_coboundary(&c, k, z).is_none());
            }
            prop_assert_eq!(first_essential_cocycle(&c, k).is_some(), h[(k - lo) as usize] > 0);
        }
    }

    #[test]
    fn kunneth_and_hom((lo, h, acyc, ops) in complex_strategy(), (lo2, h2, acyc2, ops2) in complex_strategy()) {
        let f = fp(3);
        let c = disguised(f, lo, &h, &acyc, &ops);
        let d = disguised(f, lo2, &h2, &acyc2, &ops2);
        let (hc, hd) = (cohomology_ranks(&c), cohomology_ranks(&d));
        let mut conv = BTreeMap::new();
        let mut dual = BTreeMap::new();
        for (i, a) in &hc {
            for (j, b) in &hd {
                *conv.entry(i + j).or_insert(0) += a * b;
                *dual.entry(j - i).or_insert(0) += a * b;
            }
        }
        prop_assert_eq!(cohomology_ranks(&tensor(&c, &d)), conv);
        prop_assert_eq!(cohomology_ranks(&hom_complex(&c, &d)), dual);
    }

    #[test]
    fn cone_exactness((lo, h, acyc, ops) in complex_strategy(), (lo2, h2, acyc2, ops2) in complex_strategy(), pick in 0usize..50) {
        let f = fp(3);
        let c = disguised(f, lo, &h, &acyc, &ops);
        let d = disguised(f, lo2, &h2, &acyc2, &ops2);
        let hom = hom_complex(&c, &d);
        // a random degree-0 cocycle, i.e. a chain map
        let cyc = kernel_basis(&hom.d(0));
        let mut v = vec![0u32; hom.dim(0)];
        for (i, z) in cyc.iter().enumerate() {
            let coef = ((pick >> (i % 6)) & 1) as u32 + (i % 2) as u32;
            for (x, y) in v.iter_mut().zip(z) { *x = f.add(x, &f.mul(&(coef % 3), y)); }
        }
        let sv = exact_linalg::sparsify(&f, &v);
        let map = map_from_hom_cocycle(&c, &d, &sv);
        let cn = cone(&map);
        prop_assert_eq!(cn.euler_characteristic(), d.euler_characteristic() - c.euler_characteristic());
        let (hc, hd, hn) = (cohomology_ranks(&c), cohomology_ranks(&d), cohomology_ranks(&cn));
        prop_assert_eq!(cohomology_euler(&hn), cohomology_euler(&hd) - cohomology_euler(&hc));
        for (k, r) in &hn {
            prop_assert!(*r <= hd.get(k).copied().unwrap_or(0) + hc.get(&(k + 1)).copied().unwrap_or(0));
        }
    }

    #[test]
    fn identity_class_survives((lo, h, acyc, ops) in complex_strategy()) {
        let f = fp(5);
        let c = disguised(f, lo, &h, &acyc, &ops);
        let hom = hom_complex(&c, &c);
        let mut id = Vec::new();
        for j in c.degrees() {
            for i in 0..c.dim(j) {
                id.push((hom_index(&c, &c, 0, j, i, i) as u32, f.one()));
            }
        }
        id.sort_by_key(|e| e.0);
        prop_assert!(is_cocycle(&hom, 0, &id));
        let nontrivial = h.iter().any(|&r| r > 0);
        prop_assert_eq!(solve_coboundary(&hom, 0, &id).is_none(), nontrivial);
    }
}
