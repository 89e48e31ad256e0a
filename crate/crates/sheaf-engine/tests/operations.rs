use std::collections::BTreeMap;
use std::sync::Arc;

use cell_complex::{circle, interval_grid, product, time_slice, CellSet, Q};
use exact_linalg::{Field, PrimeField, Rationals};
use sheaf_engine::{
    compose, constant_on, constant_whole, ext_ranks, lift_ext_class, sheaf_cone, CellSpace, Gen, Sheaf, SheafError,
    SheafMorphism,
};

fn cylinder() -> Arc<cell_complex::CellComplex> {
    let t = interval_grid(Q::from_integer(0), Q::from_integer(2), Q::from_integer(1)).unwrap();
    Arc::new(product(&circle(4).unwrap(), &t).unwrap())
}

#[test]
fn slice_restriction_is_local() {
    let x = cylinder();
    let space = CellSpace::new(x.clone());
    let upper = CellSet::star_of_cells(x.clone(), &time_slice(&x, Q::from_integer(2)).unwrap().cells());
    let k = constant_on(&space, &Rationals, &upper).unwrap();
    let slice = time_slice(&x, Q::from_integer(1)).unwrap();
    let (r, old) = k.restrict(&slice).unwrap();
    for (i, &c) in old.iter().enumerate() {
        assert_eq!(r.stalk(i as u32), k.stalk(c));
    }
    assert!(r.stalk_table().iter().all(|s| s.is_empty()));
    let top = time_slice(&x, Q::from_integer(2)).unwrap();
    let (r, _) = k.restrict(&top).unwrap();
    assert!(r.stalk_table().iter().all(|s| *s == BTreeMap::from([(0, 1)])));
}

#[test]
fn rejects_non_complexes_and_bad_maps() {
    let x = Arc::new(circle(3).unwrap());
    let space = CellSpace::new(x.clone());
    let f = Rationals;
    let v = (0..x.len() as u32).find(|&c| x.dim(c as usize) == 0).unwrap();
    let e = x.cofacets(v as usize)[0].0;
    // A face map of the wrong degree.
    let bad = Sheaf::new(space.clone(), f, vec![Gen { cell: e, deg: 0 }, Gen { cell: v, deg: 0 }], vec![vec![(1, f.one())], vec![]]);
    assert!(matches!(bad, Err(SheafError::Invalid(_))));
    let k = Arc::new(constant_whole(&space, &f));
    let zero = vec![Vec::new(); k.len()];
    assert!(SheafMorphism::new(k.clone(), k.clone(), 0, zero).unwrap().is_zero());
    let mut half = vec![Vec::new(); k.len()];
    half[0] = vec![(0u32, f.one())];
    assert!(matches!(SheafMorphism::new(k.clone(), k.clone(), 0, half), Err(SheafError::InvalidMorphism(_))));
}

#[test]
fn rescaling_preserves_ext_and_classes_compose() {
    let x = cylinder();
    let space = CellSpace::new(x.clone());
    let f = PrimeField::new(7).unwrap();
    let k = Arc::new(constant_whole(&space, &f));
    let ks = k.rescaled(&f.from_i64(3));
    assert_eq!(ext_ranks(&k, &k).unwrap(), ext_ranks(&ks, &ks).unwrap());
    let a = lift_ext_class(&k, &k, 1, 0).unwrap();
    let id = lift_ext_class(&k, &k, 0, 0).unwrap();
    let c = compose(&a, &id).unwrap();
    SheafMorphism::new(k.clone(), k.clone(), 1, c.map.clone()).unwrap();
    assert!(!c.is_null().unwrap());
    let aa = compose(&a, &a).unwrap();
    assert!(aa.is_null().unwrap());
    assert!(!a.scaled(&f.from_i64(2)).is_null().unwrap());
    // Cone of a degree-1 class is a valid sheaf.
    sheaf_cone(&a).unwrap();
}

#[test]
fn dumps_are_stable() {
    let x = Arc::new(circle(3).unwrap());
    let space = CellSpace::new(x);
    let k = constant_whole(&space, &Rationals);
    let a = serde_json::to_string(&k.to_json()).unwrap();
    let b = serde_json::to_string(&constant_whole(&space, &Rationals).to_json()).unwrap();
    assert_eq!(a, b);
    let mut csv = Vec::new();
    k.write_stalk_csv(&mut csv).unwrap();
    let text = String::from_utf8(csv).unwrap();
    assert_eq!(text.lines().count(), 1 + 6);
    assert!(text.starts_with("cell,degree,rank\n"));
    assert_eq!(k.shift(2).shift(-2).gens(), k.gens());
}
