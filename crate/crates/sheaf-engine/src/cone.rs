//! Mapping cones of chain maps between sheaves.

use crate::hom::SheafMorphism;
use crate::sheaf::{Gen, Sheaf};
use crate::SheafError;
use exact_linalg::{scale, Field};

/// `Cone(φ) = G[k] ⊕ F[1]` for `φ: F → G[k]`. Generators of `F` come first.
pub fn sheaf_cone<F: Field>(phi: &SheafMorphism<F>) -> Result<Sheaf<F>, SheafError> {
    let (src, tgt, k) = (&phi.source, &phi.target, phi.degree);
    let f = src.field();
    let off = src.len() as u32;
    let m1 = f.from_i64(-1);
    let sign_g = f.from_i64(if k.rem_euclid(2) == 0 { 1 } else { -1 });
    let mut gens = Vec::with_capacity(src.len() + tgt.len());
    let mut diff = Vec::with_capacity(src.len() + tgt.len());
    for g in 0..src.len() as u32 {
        let sg = src.gen(g);
        gens.push(Gen { cell: sg.cell, deg: sg.deg - 1 });
        let mut col = scale(f, &m1, src.diff(g));
        col.extend(phi.map[g as usize].iter().map(|(h, c)| (h + off, c.clone())));
        diff.push(col);
    }
    for h in 0..tgt.len() as u32 {
        let th = tgt.gen(h);
        gens.push(Gen { cell: th.cell, deg: th.deg - k });
        diff.push(scale(f, &sign_g, tgt.diff(h)).into_iter().map(|(x, c)| (x + off, c)).collect());
    }
    Sheaf::new(src.space().clone(), f.clone(), gens, diff)
}

/// `Cocone(φ) = Cone(φ)[−1]`.
pub fn sheaf_cocone<F: Field>(phi: &SheafMorphism<F>) -> Result<Sheaf<F>, SheafError> {
    Ok(sheaf_cone(phi)?.shift(-1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::{ext_ranks, lift_ext_class};
    use crate::resolve::constant_whole;
    use crate::space::CellSpace;
    use cell_complex::sphere2;
    use exact_linalg::Rationals;
    use std::collections::BTreeMap;
    use std::sync::Arc;

    #[test]
    fn cone_of_identity_is_acyclic() {
        let space = CellSpace::new(Arc::new(sphere2(1).unwrap()));
        let k = Arc::new(constant_whole(&space, &Rationals));
        let id = lift_ext_class(&k, &k, 0, 0).unwrap();
        let c = sheaf_cone(&id).unwrap();
        for cell in 0..space.len() as u32 {
            assert!(c.stalk(cell).is_empty());
        }
        assert_eq!(ext_ranks(&c, &c).unwrap(), BTreeMap::new());
    }
}
