//! Discrete microsupport tests.
//!
//! For a vertex `v` and an integer covector `δ`, the local sections supported
//! on the closed half-space `{⟨δ, x − v⟩ ≥ 0}` are computed on the open star of
//! `v`: the cells meeting the open negative side form an open subset `W`, and
//! `RHom(K_{St v ∖ W}, F)` is the local cohomology we need. The microsupport
//! is the closure of the set where it is nonzero, which is approximated by
//! also testing the nearby covectors `3δ + e`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use cell_complex::Q;
use exact_linalg::Field;

use crate::hom::ext_ranks;
use crate::resolve::resolve;
use crate::sheaf::Sheaf;
use crate::space::CellSpace;
use crate::SheafError;

/// All nonzero vectors of `{−1, 0, 1}^d`.
pub fn directions(d: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for code in 0..3usize.pow(d as u32) {
        let mut c = code;
        let v: Vec<i64> = (0..d)
            .map(|_| {
                let x = (c % 3) as i64 - 1;
                c /= 3;
                x
            })
            .collect();
        if v.iter().any(|&x| x != 0) {
            out.push(v);
        }
    }
    out
}

fn negative_vertices(space: &CellSpace, v: u32, delta: &[i64]) -> Result<Vec<u32>, SheafError> {
    let x = space.complex();
    let d = x.geometry().map_or(0, |g| g.coord_dim());
    if delta.len() != d || delta.iter().all(|&c| c == 0) {
        return Err(SheafError::InvalidDirection(d));
    }
    let mut neg: Vec<u32> = x
        .star(v as usize)
        .into_iter()
        .filter(|&c| x.dim(c as usize) == 1)
        .flat_map(|e| x.vertices(e as usize))
        .filter(|&w| {
            let disp = x.displacement(v as usize, w as usize);
            let s: Q = disp.iter().zip(delta).map(|(a, &b)| a * Q::from_integer(b)).sum();
            s < Q::from_integer(0)
        })
        .collect();
    neg.sort_unstable();
    neg.dedup();
    Ok(neg)
}

/// Local resolution on `St v` of the constant sheaf on the closed part
/// avoiding the negative vertices `neg`.
fn local_resolution<F: Field>(space: &Arc<CellSpace>, field: &F, v: u32, neg: &[u32]) -> Sheaf<F> {
    let x = space.complex();
    let mut star = x.star(v as usize);
    star.sort_by_key(|&c| (x.dim(c as usize), c));
    let in_w = |c: u32| x.vertices(c as usize).iter().any(|w| neg.binary_search(w).is_ok());
    let z: Vec<u32> = star.iter().copied().filter(|&c| !in_w(c)).collect();
    resolve(space, field, &star, |c| z.binary_search_by_key(&(x.dim(c as usize), c), |&s| (x.dim(s as usize), s)).is_ok())
}

/// Ranks of the local sections of `F` at `v` supported on `{⟨δ, x − v⟩ ≥ 0}`.
pub fn gamma_stalk<F: Field>(f: &Sheaf<F>, v: u32, delta: &[i64]) -> Result<BTreeMap<i32, usize>, SheafError> {
    let neg = negative_vertices(f.space(), v, delta)?;
    let p = local_resolution(f.space(), f.field(), v, &neg);
    ext_ranks(&p, f)
}

fn perturbations(delta: &[i64]) -> impl Iterator<Item = Vec<i64>> + '_ {
    std::iter::once(delta.to_vec())
        .chain(directions(delta.len()).into_iter().map(move |e| delta.iter().zip(&e).map(|(a, b)| 3 * a + b).collect()))
}

/// Is `(v, δ)` in the (closed) microsupport of `F`?
pub fn micro_test<F: Field>(f: &Sheaf<F>, v: u32, delta: &[i64]) -> Result<bool, SheafError> {
    for d in perturbations(delta) {
        if !gamma_stalk(f, v, &d)?.is_empty() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// [`micro_test`] with local resolutions cached by vertex and negative side.
pub struct MicroTester<F: Field> {
    space: Arc<CellSpace>,
    field: F,
    cache: Mutex<HashMap<(u32, Vec<u32>), Arc<Sheaf<F>>>>,
}

impl<F: Field> MicroTester<F> {
    pub fn new(space: Arc<CellSpace>, field: F) -> Self {
        MicroTester { space, field, cache: Mutex::new(HashMap::new()) }
    }

    fn resolution(&self, v: u32, neg: Vec<u32>) -> Arc<Sheaf<F>> {
        let key = (v, neg);
        if let Some(p) = self.cache.lock().expect("cache lock").get(&key) {
            return p.clone();
        }
        let p = Arc::new(local_resolution(&self.space, &self.field, v, &key.1));
        self.cache.lock().expect("cache lock").insert(key, p.clone());
        p
    }

    pub fn gamma_stalk(&self, f: &Sheaf<F>, v: u32, delta: &[i64]) -> Result<BTreeMap<i32, usize>, SheafError> {
        if !Arc::ptr_eq(f.space(), &self.space) {
            return Err(SheafError::Mismatch("sheaf lives on another complex".into()));
        }
        let neg = negative_vertices(&self.space, v, delta)?;
        ext_ranks(&self.resolution(v, neg), f)
    }

    pub fn test(&self, f: &Sheaf<F>, v: u32, delta: &[i64]) -> Result<bool, SheafError> {
        for d in perturbations(delta) {
            if !self.gamma_stalk(f, v, &d)?.is_empty() {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Every direction of `{−1,0,1}^d ∖ 0` in the microsupport at `v`.
    pub fn profile(&self, f: &Sheaf<F>, v: u32) -> Result<Vec<Vec<i64>>, SheafError> {
        let d = self.space.complex().geometry().map_or(0, |g| g.coord_dim());
        // Many covectors share a negative side; test each side once.
        let mut seen: HashMap<Vec<u32>, bool> = HashMap::new();
        let mut out = Vec::new();
        for dir in directions(d) {
            let mut hit = false;
            for p in perturbations(&dir) {
                let neg = negative_vertices(&self.space, v, &p)?;
                let nonzero = match seen.get(&neg) {
                    Some(&b) => b,
                    None => {
                        let b = !ext_ranks(&self.resolution(v, neg.clone()), f)?.is_empty();
                        seen.insert(neg, b);
                        b
                    }
                };
                if nonzero {
                    hit = true;
                    break;
                }
            }
            if hit {
                out.push(dir);
            }
        }
        Ok(out)
    }
}
