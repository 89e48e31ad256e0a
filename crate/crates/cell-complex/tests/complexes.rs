use std::collections::BTreeMap;
use std::sync::Arc;

use cell_complex::*;
use exact_linalg::{PrimeField, Rationals};
use homological::cohomology_ranks;
use proptest::prelude::*;

const F2: PrimeField = PrimeField::F2;

fn ranks(pairs: &[(i32, usize)]) -> BTreeMap<i32, usize> {
    pairs.iter().copied().collect()
}

fn h(x: &CellComplex) -> BTreeMap<i32, usize> {
    cohomology_ranks(&relative_cochain(x, None, F2).unwrap())
}

#[test]
fn circle_cohomology() {
    let c = circle(5).unwrap();
    assert_eq!(c.euler_characteristic(), 0);
    assert_eq!(h(&c), ranks(&[(0, 1), (1, 1)]));
    assert!(circle(2).is_err());
}

#[test]
fn sphere_counts_and_cohomology() {
    for k in 0..=2 {
        let s = sphere2(k).unwrap();
        let p = 4usize.pow(k as u32);
        assert_eq!(s.count_dim(0), 4 * p + 2);
        assert_eq!(s.count_dim(1), 12 * p);
        assert_eq!(s.count_dim(2), 8 * p);
        assert_eq!(h(&s), ranks(&[(0, 1), (2, 1)]));
        let q = cohomology_ranks(&relative_cochain(&s, None, Rationals).unwrap());
        assert_eq!(q, ranks(&[(0, 1), (2, 1)]));
    }
}

#[test]
fn sphere_relative_to_a_vertex() {
    let s = Arc::new(sphere2(1).unwrap());
    let v = CellSet::closure_of_cells(s.clone(), &[0]);
    assert_eq!(cohomology_ranks(&relative_cochain(&s, Some(&v), F2).unwrap()), ranks(&[(2, 1)]));
}

#[test]
fn mesh_colouring_is_proper_and_antipodal() {
    for k in 0..=1 {
        let m = sphere_mesh(k);
        let c = m.colors.as_ref().unwrap();
        for t in &m.triangles {
            assert!(c[t[0] as usize] != c[t[1] as usize] && c[t[1] as usize] != c[t[2] as usize] && c[t[0] as usize] != c[t[2] as usize]);
        }
        for (v, &a) in m.antipode.iter().enumerate() {
            assert_eq!(c[v], c[a as usize]);
        }
    }
    assert!(sphere_mesh(2).colors.is_none());
}

#[test]
fn sphere_square_and_its_diagonals() {
    let mesh = sphere_mesh(0);
    let x = Arc::new(sphere_square(&mesh).unwrap());
    assert_eq!(x.euler_characteristic(), 4);
    assert_eq!(h(&x), ranks(&[(0, 1), (2, 2), (4, 1)]));
    let n = mesh.vertices.len() as u32;
    for anti in [false, true] {
        let on: Vec<bool> = (0..x.len())
            .map(|c| x.vertices(c).iter().all(|&v| if anti { mesh.antipode[(v / n) as usize] == v % n } else { v / n == v % n }))
            .collect();
        let d = CellSet::new(x.clone(), on).unwrap();
        assert_eq!(d.kind(), SetKind::Closed);
        assert_eq!(d.len(), 26);
        assert_eq!(cohomology_ranks(&cochains_of(&x, d.members(), F2)), ranks(&[(0, 1), (2, 1)]));
    }
}

#[test]
fn products() {
    let c = circle(4).unwrap();
    let t = interval_grid(Q::from(0), Q::from(1), Q::new(1, 3)).unwrap();
    assert_eq!(t.count_dim(0), 4);
    let ct = product(&c, &t).unwrap();
    assert_eq!(ct.euler_characteristic(), 0);
    assert_eq!(h(&ct), ranks(&[(0, 1), (1, 1)]));
    let torus = product(&c, &circle(3).unwrap()).unwrap();
    assert_eq!(h(&torus), ranks(&[(0, 1), (1, 2), (2, 1)]));
    assert!(product(&t, &t).is_err());
    assert_eq!(ct.geometry().unwrap().time_slot, Some(1));
}

#[test]
fn lightcone_lattice_structure() {
    let m = 2;
    let x = lightcone_lattice(m, 0, 4, true, Q::from(0)).unwrap();
    assert_eq!(x.count_dim(0), 5 * 4);
    assert_eq!(x.count_dim(2), 2 * 4 * 4);
    assert_eq!(h(&x), ranks(&[(0, 1), (1, 1)]));
    // every edge is horizontal or has slope ±1
    for c in 0..x.len() {
        if x.dim(c) == 1 {
            let v = x.vertices(c);
            let d = x.displacement(v[0] as usize, v[1] as usize);
            assert!(d[1] == Q::from(0) || qabs(d[0]) == qabs(d[1]), "edge {d:?}");
        }
    }
    let flat = lightcone_lattice(3, -2, 5, false, Q::from(1)).unwrap();
    assert_eq!(h(&flat), ranks(&[(0, 1)]));
}

#[test]
fn exact_predicates() {
    let x = Arc::new(lightcone_lattice(2, 0, 8, true, Q::from(0)).unwrap());
    let cone = cells_where_exact(&x, Sense::Strict, |e| qabs(e[0]) < e[1]).unwrap();
    assert_eq!(cone.kind(), SetKind::Open);
    let closed = cells_where_exact(&x, Sense::NonStrict, |e| qabs(e[0]) <= e[1]).unwrap();
    assert_eq!(closed, cone.closure());
    assert!(matches!(cells_where_exact(&x, Sense::Strict, |e| e[0] < Q::new(1, 7)), Err(CellError::NotAligned)));
    let all = cells_where_exact(&x, Sense::NonStrict, |_| true).unwrap();
    assert_eq!(all.kind(), SetKind::Closed);
    assert_eq!(all.len(), x.len());
    assert!(cells_where_exact(&x, Sense::Strict, |_| false).unwrap().is_empty());
}

#[test]
fn time_slices() {
    let x = Arc::new(lightcone_lattice(2, 0, 4, true, Q::from(0)).unwrap());
    let s = time_slice(&x, Q::new(1, 2)).unwrap();
    assert_eq!(cohomology_ranks(&cochains_of(&x, s.members(), F2)), ranks(&[(0, 1), (1, 1)]));
    let (sub, ids) = subcomplex(&s).unwrap();
    assert_eq!(sub.len(), ids.len());
    assert!((0..sub.len()).all(|c| sub.time(c) == Some(Q::new(1, 2))));
    assert!(matches!(time_slice(&x, Q::new(1, 3)), Err(CellError::OffGrid(_))));
}

#[test]
fn locally_closed_sets() {
    let data = VertexData { exact: vec![vec![], vec![], vec![]], ..Default::default() };
    let tri = Arc::new(simplicial(&data, &[vec![0, 1, 2]]).unwrap());
    let top = (0..tri.len()).find(|&c| tri.dim(c) == 2).unwrap() as u32;
    assert!(matches!(CellSet::from_cells(tri.clone(), &[0, top]), Err(CellError::NotLocallyClosed)));
    let open = CellSet::from_cells(tri.clone(), &[top]).unwrap();
    assert_eq!(open.kind(), SetKind::Open);
    let edge = (0..tri.len()).find(|&c| tri.dim(c) == 1 && tri.vertices(c) == vec![0, 1]).unwrap() as u32;
    let lc = CellSet::closure_of_cells(tri.clone(), &[edge]).minus(&CellSet::closure_of_cells(tri.clone(), &[0])).unwrap();
    assert_eq!(lc.kind(), SetKind::LocallyClosed);
    let (cl, op) = lc.closed_open_pair();
    assert_eq!(cl.intersect(&op).unwrap(), lc);
    assert_eq!(open.complement().unwrap().kind(), SetKind::Closed);
}

#[test]
fn json_round_trip() {
    let x = product(&lightcone_lattice(2, 0, 3, true, Q::from(0)).unwrap(), &circle_labeled(3, "w").unwrap()).unwrap();
    let s = json::to_string(&x);
    let y = json::from_str(&s).unwrap();
    assert_eq!(x, y);
    assert_eq!(json::to_string(&y), s);
    let sq = sphere_square(&sphere_mesh(0)).unwrap();
    assert_eq!(json::from_str(&json::to_string(&sq)).unwrap(), sq);
    let j = json::to_json(&x);
    assert_eq!(j.time[&0], "0");
}

fn torus() -> Arc<CellComplex> {
    Arc::new(product(&circle(6).unwrap(), &circle(4).unwrap()).unwrap())
}

proptest! {
    #[test]
    fn closure_and_star_kinds(bits in proptest::collection::vec(any::<bool>(), 24 * 4)) {
        let x = torus();
        let cells: Vec<u32> = (0..x.len() as u32).filter(|&c| bits[c as usize]).collect();
        let cl = CellSet::closure_of_cells(x.clone(), &cells);
        let st = CellSet::star_of_cells(x.clone(), &cells);
        prop_assert!(CellSet::with_kind(x.clone(), cl.members().to_vec(), SetKind::Closed).is_ok());
        prop_assert!(CellSet::with_kind(x.clone(), st.members().to_vec(), SetKind::Open).is_ok());
        prop_assert_eq!(cl.closure(), cl.clone());
        prop_assert_eq!(cl.complement().unwrap().kind(), SetKind::Open);
    }

    #[test]
    fn relative_euler_characteristic(bits in proptest::collection::vec(any::<bool>(), 24 * 4)) {
        let x = torus();
        let cells: Vec<u32> = (0..x.len() as u32).filter(|&c| bits[c as usize] && x.dim(c as usize) < 2).collect();
        let a = CellSet::closure_of_cells(x.clone(), &cells);
        let (sub, _) = subcomplex(&a).unwrap();
        let rel = cohomology_ranks(&relative_cochain(&x, Some(&a), F2).unwrap());
        let chi: i64 = rel.iter().map(|(&k, &r)| if k % 2 == 0 { r as i64 } else { -(r as i64) }).sum();
        prop_assert_eq!(chi, x.euler_characteristic() - sub.euler_characteristic());
    }
}
