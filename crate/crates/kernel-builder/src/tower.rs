//! The three-step construction: generators `ψ_i`, the towers `K_{±i}` and
//! the kernel `K = Cocone(ψ_0: K_- → K_+[D])`.
//!
//! Conventions. A degree-`k` morphism `F → G` is a chain map `F → G[k]`.
//! Positive stages are `K_i = Cocone(K_{i−1} → K_{Z_{i+1}}[e_i])`, negative
//! stages `K_{−i} = Cone(K_{Z_{−(i+1)}}[a_i] → K_{−(i−1)})`, where the shifts
//! come from the cumulative step degrees (see [`positive_shift`]).

use std::collections::BTreeMap;
use std::sync::Arc;

use cell_complex::CellSet;
use exact_linalg::{Field, SparseVec};
use sheaf_engine::{constant_on, ext_ranks, lift_ext_class, sheaf_cocone, sheaf_cone, HomComplex, Sheaf, SheafMorphism};

use crate::model::{build_regions, Model};
use crate::report::ExtRow;
use crate::{KernelError, Space};

/// Cumulative shift `s_i` of `K_{Z_i}` in the chain of generators:
/// `s_{±1} = 0`, `s_{i+1} = s_i + d_i`, `s_{−(i+1)} = s_{−i} − d_i`.
pub fn region_shift(space: Space, i: i32) -> i32 {
    assert!(i != 0);
    let sign = i.signum();
    (1..i.abs()).map(|j| sign * space.step_degree(j)).sum()
}

/// Shift `e_i = s_{i+1} − (i−1)` of `K_{Z_{i+1}}` in the positive stage `K_i`.
pub fn positive_shift(space: Space, i: i32) -> i32 {
    region_shift(space, i + 1) - (i - 1)
}

/// Shift `a_i = s_{−(i+1)} + (i−1)` of `K_{Z_{−(i+1)}}` in the negative stage `K_{−i}`.
pub fn negative_shift(space: Space, i: i32) -> i32 {
    region_shift(space, -(i + 1)) + (i - 1)
}

/// Closed forms of the positive shifts, checked against the recursion.
pub fn closed_form_shift(space: Space, i: i32) -> i32 {
    let n = space.n() as i32;
    match space {
        Space::Sphere(_) => i * n - (i - 1),
        Space::Projective(_) if i % 2 == 1 => (i - 1) * n + 2,
        Space::Projective(_) => i * n + 1,
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    /// Unit rescaling `i ↦ c` of the chosen generators `ψ_i` (`i = 0` is `ψ_0`).
    pub units: BTreeMap<i32, i64>,
}

pub struct Assembly<F: Field> {
    pub model: Model,
    pub field: F,
    pub regions: BTreeMap<i32, CellSet>,
    pub constants: BTreeMap<i32, Arc<Sheaf<F>>>,
    /// `ψ_i`: for `i > 0` of degree `d_i` from `K_{Z_i}` to `K_{Z_{i+1}}`, for
    /// `i < 0` from `K_{Z_{i−1}}` to `K_{Z_i}`.
    pub generators: BTreeMap<i32, SheafMorphism<F>>,
    /// `ψ̃_i` for `|i| ≥ 2`.
    pub induced: BTreeMap<i32, SheafMorphism<F>>,
    pub tower_plus: Vec<Arc<Sheaf<F>>>,
    pub tower_minus: Vec<Arc<Sheaf<F>>>,
    pub k_plus: Option<Arc<Sheaf<F>>>,
    pub k_minus: Option<Arc<Sheaf<F>>>,
    pub psi0: Option<SheafMorphism<F>>,
    pub kernel: Option<Arc<Sheaf<F>>>,
    pub ext_table: Vec<ExtRow>,
    units: BTreeMap<i32, i64>,
}

impl<F: Field> Assembly<F> {
    /// Builds the regions and their constant sheaves.
    pub fn new(model: Model, field: F) -> Result<Self, KernelError> {
        let regions = build_regions(&model)?;
        let mut constants = BTreeMap::new();
        for (&i, z) in &regions {
            if !z.is_empty() {
                constants.insert(i, Arc::new(constant_on(&model.cells, &field, z)?));
            }
        }
        Ok(Assembly {
            model,
            field,
            regions,
            constants,
            generators: BTreeMap::new(),
            induced: BTreeMap::new(),
            tower_plus: Vec::new(),
            tower_minus: Vec::new(),
            k_plus: None,
            k_minus: None,
            psi0: None,
            kernel: None,
            ext_table: Vec::new(),
            units: BTreeMap::new(),
        })
    }

    pub fn space(&self) -> Space {
        self.model.space
    }

    fn constant(&self, i: i32) -> Option<&Arc<Sheaf<F>>> {
        self.constants.get(&i)
    }

    pub fn kernel(&self) -> Option<&Arc<Sheaf<F>>> {
        self.kernel.as_ref()
    }
}

fn rank_one(stage: String, ranks: &BTreeMap<i32, usize>, degree: i32) -> Result<(), KernelError> {
    if ranks.get(&degree) == Some(&1) {
        Ok(())
    } else {
        Err(KernelError::Rank { stage, degree, ranks: ranks.clone() })
    }
}

/// Chooses `ψ_i` for every consecutive pair of nonempty regions, after
/// checking that the relevant Ext has rank one in the step degree.
pub fn choose_generators<F: Field>(a: &mut Assembly<F>, opts: &Options) -> Result<(), KernelError> {
    let space = a.space();
    for (&k, &u) in &opts.units {
        if a.field.is_zero(&a.field.from_i64(u)) {
            return Err(KernelError::Unsupported(format!("scale {u} for ψ{k} vanishes in {}", a.field.kind())));
        }
    }
    a.units = opts.units.clone();
    let m = a.model.max_index();
    for i in 1..m {
        for (src, tgt, key) in [(i, i + 1, i), (-(i + 1), -i, -i)] {
            let (Some(s), Some(t)) = (a.constant(src).cloned(), a.constant(tgt).cloned()) else { continue };
            let d = space.step_degree(i);
            let ranks = ext_ranks(&s, &t)?;
            a.ext_table.push(ExtRow::new(key, format!("Z{src}"), format!("Z{tgt}"), Some(d), &ranks));
            rank_one(format!("Ext(K_Z{src}, K_Z{tgt})"), &ranks, d)?;
            let mut psi = lift_ext_class(&s, &t, d, 0)?;
            if let Some(&u) = opts.units.get(&key) {
                psi = psi.scaled(&a.field.from_i64(u));
            }
            a.generators.insert(key, psi);
        }
    }
    Ok(())
}

/// Rescales `lift` so that its restriction `restricted` (a cocycle in
/// `Hom(src, tgt)` of degree `d`) is cohomologous to `psi`.
fn normalize<F: Field>(
    stage: &str,
    lift: SheafMorphism<F>,
    restricted: Vec<SparseVec<F::Elem>>,
    psi: &SheafMorphism<F>,
) -> Result<SheafMorphism<F>, KernelError> {
    let f = psi.source.field().clone();
    let h = HomComplex::new(&psi.source, &psi.target)?;
    let err = || KernelError::Lift(stage.to_string());
    let r = h.to_cochain(psi.degree, &restricted).ok_or_else(err)?;
    let p = h.to_cochain(psi.degree, &psi.map).ok_or_else(err)?;
    let c = h.class_ratio(psi.degree, &r, &p).ok_or_else(err)?;
    let inv = f.inv(&c).ok_or_else(err)?;
    Ok(lift.scaled(&inv))
}

fn vanishing<F: Field>(a: &mut Assembly<F>, key: i32, names: (String, String), s: &Sheaf<F>, t: &Sheaf<F>) -> Result<(), KernelError> {
    let ranks = ext_ranks(s, t)?;
    a.ext_table.push(ExtRow::new(key, names.0.clone(), names.1.clone(), None, &ranks));
    if ranks.is_empty() {
        Ok(())
    } else {
        Err(KernelError::Vanishing { stage: format!("Ext({}, {})", names.0, names.1), ranks })
    }
}

/// `K_+`: the last stage of the positive tower inside the window.
pub fn assemble_plus<F: Field>(a: &mut Assembly<F>) -> Result<Arc<Sheaf<F>>, KernelError> {
    let space = a.space();
    let z1 = a.constant(1).cloned().ok_or_else(|| KernelError::Window("Z1 is empty".into()))?;
    let mut prev = z1.clone();
    // K_{i−2}: the F-part of the stage K_{i−1}; K_0 := K_{Z_1}.
    let mut before = z1;
    let mut stages = Vec::new();
    let mut i = 1;
    while let Some(next) = a.constant(i + 1).cloned() {
        let psi = a.generators.get(&i).cloned().ok_or_else(|| KernelError::Lift(format!("missing ψ{i}")))?;
        let map = if i == 1 {
            psi
        } else {
            let e = positive_shift(space, i);
            let name = if i == 2 { "Z1".to_string() } else { format!("K{}", i - 2) };
            vanishing(a, i, (name, format!("Z{}", i + 1)), &before, &next)?;
            let ranks = ext_ranks(&prev, &next)?;
            rank_one(format!("Ext(K{}, K_Z{})", i - 1, i + 1), &ranks, e)?;
            let lift = lift_ext_class(&prev, &next, e, 0)?;
            let off = before.len();
            let restricted = lift.map[off..off + psi.source.len()].to_vec();
            let lift = normalize(&format!("ψ̃{i}"), lift, restricted, &psi)?;
            a.induced.insert(i, lift.clone());
            lift
        };
        let k = Arc::new(sheaf_cocone(&map)?);
        before = prev;
        prev = k.clone();
        stages.push(k);
        i += 1;
    }
    a.tower_plus = stages;
    a.k_plus = Some(prev.clone());
    Ok(prev)
}

/// `K_-`: the last stage of the negative tower inside the window.
pub fn assemble_minus<F: Field>(a: &mut Assembly<F>) -> Result<Arc<Sheaf<F>>, KernelError> {
    let space = a.space();
    let zm1 = a.constant(-1).cloned().ok_or_else(|| KernelError::Window("Z-1 is empty".into()))?;
    let mut prev = zm1.clone();
    let mut before = zm1;
    // Size of the quotient part K_{Z_{−i}} at the front of K_{−(i−1)}.
    let mut front = 0usize;
    let mut stages = Vec::new();
    let mut i = 1;
    while let Some(src) = a.constant(-(i + 1)).cloned() {
        let psi = a.generators.get(&-i).cloned().ok_or_else(|| KernelError::Lift(format!("missing ψ-{i}")))?;
        let shift = negative_shift(space, i);
        let map = if i == 1 {
            psi
        } else {
            let name = if i == 2 { "Z-1".to_string() } else { format!("K-{}", i - 2) };
            vanishing(a, -i, (format!("Z-{}", i + 1), name), &src, &before)?;
            let e = -shift;
            let ranks = ext_ranks(&src, &prev)?;
            rank_one(format!("Ext(K_Z-{}, K-{})", i + 1, i - 1), &ranks, e)?;
            let lift = lift_ext_class(&src, &prev, e, 0)?;
            let restricted = lift.map.iter().map(|col| col.iter().filter(|(h, _)| (*h as usize) < front).cloned().collect()).collect();
            let lift = normalize(&format!("ψ̃-{i}"), lift, restricted, &psi)?;
            a.induced.insert(-i, lift.clone());
            lift
        };
        let k = Arc::new(sheaf_cone(&map)?.shift(shift));
        front = src.len();
        before = prev;
        prev = k.clone();
        stages.push(k);
        i += 1;
    }
    a.tower_minus = stages;
    a.k_minus = Some(prev.clone());
    Ok(prev)
}

/// `K = Cocone(ψ_0)` for the generator `ψ_0` of `Ext^D(K_-, K_+)`.
pub fn assemble_kernel<F: Field>(a: &mut Assembly<F>) -> Result<Arc<Sheaf<F>>, KernelError> {
    let (Some(kp), Some(km)) = (a.k_plus.clone(), a.k_minus.clone()) else {
        return Err(KernelError::Lift("towers not assembled".into()));
    };
    let d = a.space().kernel_degree();
    let ranks = ext_ranks(&km, &kp)?;
    a.ext_table.push(ExtRow::new(0, "K-".into(), "K+".into(), Some(d), &ranks));
    rank_one("Ext(K-, K+)".into(), &ranks, d)?;
    let mut psi0 = lift_ext_class(&km, &kp, d, 0)?;
    if let Some(&u) = a.units.get(&0) {
        psi0 = psi0.scaled(&a.field.from_i64(u));
    }
    let k = Arc::new(sheaf_cocone(&psi0)?);
    a.psi0 = Some(psi0);
    a.kernel = Some(k.clone());
    Ok(k)
}

/// The whole pipeline.
pub fn assemble<F: Field>(model: Model, field: F, opts: &Options) -> Result<Assembly<F>, KernelError> {
    let mut a = Assembly::new(model, field)?;
    choose_generators(&mut a, opts)?;
    assemble_plus(&mut a)?;
    assemble_minus(&mut a)?;
    assemble_kernel(&mut a)?;
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_bookkeeping_matches_closed_forms() {
        for space in [Space::Sphere(1), Space::Sphere(3), Space::Projective(1), Space::Projective(2)] {
            for i in 1..8 {
                assert_eq!(positive_shift(space, i), closed_form_shift(space, i), "{space:?} {i}");
                assert_eq!(negative_shift(space, i), -closed_form_shift(space, i), "{space:?} {i}");
            }
        }
        // Expected chains: K_{Z_2}[n], K_{Z_3}[2n−1] and K_{Z_{−3}}[−2n+1].
        assert_eq!(positive_shift(Space::Sphere(2), 2), 3);
        assert_eq!(negative_shift(Space::Sphere(2), 2), -3);
        assert_eq!(region_shift(Space::Projective(3), 3), 8);
    }
}
