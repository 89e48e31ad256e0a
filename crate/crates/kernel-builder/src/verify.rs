//! Checks run on an assembled kernel.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use cell_complex::Q;
use exact_linalg::Field;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sheaf_engine::{MicroTester, Sheaf};

use crate::report::{Mismatch, SliceCheck};
use crate::tower::Assembly;
use crate::KernelError;

/// Number of generic vertices sampled by [`verify_ss_profile`].
pub const GENERIC_SAMPLES: usize = 200;

fn kernel<F: Field>(a: &Assembly<F>) -> Result<&Arc<Sheaf<F>>, KernelError> {
    a.kernel().ok_or_else(|| KernelError::Lift("kernel not assembled".into()))
}

/// `K|_{t=0}` has stalk `K` in degree 0 on diagonal cells and vanishes elsewhere.
pub fn t0_check<F: Field>(a: &Assembly<F>) -> Result<bool, KernelError> {
    let k = kernel(a)?;
    let one = BTreeMap::from([(0, 1)]);
    Ok(a.model.slice(Q::zero())?.cells().into_iter().all(|c| {
        let s = k.stalk(c);
        if a.model.on_diagonal(c) {
            s == one
        } else {
            s.is_empty()
        }
    }))
}

/// The vertices examined by [`verify_ss_profile`]: every vertex on the slices
/// `t ∈ {0, 1, 2}` inside the window, plus a seeded sample of the remaining
/// vertices strictly inside the window. Sorted by id.
pub fn ss_sample<F: Field>(a: &Assembly<F>, seed: u64) -> Vec<u32> {
    let m = &a.model;
    let corner = |t: Q| t.is_integer() && (0..=2).contains(&t.to_integer());
    let (mut picked, rest): (Vec<u32>, Vec<u32>) =
        m.vertices().into_iter().filter(|&v| m.time(v).abs() < m.t_max).partition(|&v| corner(m.time(v)));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    picked.extend(rest.choose_multiple(&mut rng, GENERIC_SAMPLES).copied());
    picked.sort_unstable();
    picked
}

/// Direction profile of `f` at every vertex of `vs`, sorted, computed on a
/// pool of `jobs` threads.
pub fn profiles<F: Field>(a: &Assembly<F>, f: &Sheaf<F>, vs: &[u32], jobs: usize) -> Result<Vec<Vec<Vec<i64>>>, KernelError> {
    let tester = MicroTester::new(a.model.cells.clone(), a.field.clone());
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().map_err(|e| KernelError::Unsupported(e.to_string()))?;
    pool.install(|| {
        vs.par_iter()
            .map(|&v| {
                let mut p = tester.profile(f, v)?;
                p.sort();
                Ok(p)
            })
            .collect()
    })
}

/// Compares the direction profile of `K` with the expected classes of `Λ`
/// on the sample of [`ss_sample`]. Lattice models only.
pub fn verify_ss_profile<F: Field>(a: &Assembly<F>, seed: u64, jobs: usize) -> Result<(Vec<Mismatch>, usize), KernelError> {
    if !a.model.is_lattice() {
        return Err(KernelError::Unsupported("direction profiles are only tabulated on the lattice model".into()));
    }
    let k = kernel(a)?;
    let vs = ss_sample(a, seed);
    let found = profiles(a, k, &vs, jobs)?;
    let mut out = Vec::new();
    for (&v, found) in vs.iter().zip(found) {
        let expected = a.model.expected_directions(v).expect("lattice model");
        if expected != found {
            let coords = a.model.complex.exact(v as usize).iter().map(|q| q.to_string()).collect();
            out.push(Mismatch { cell: v, coords, expected, found });
        }
    }
    Ok((out, vs.len()))
}

/// Stalks of `K` on the slice `t = 2k` grouped by stratum.
pub fn verify_slice_constructibility<F: Field>(a: &Assembly<F>, k: i64) -> Result<SliceCheck, KernelError> {
    slice_check(a, Q::from(2 * k))
}

/// Stalks of `K` on the grid slice at time `t`, grouped by stratum.
pub fn slice_check<F: Field>(a: &Assembly<F>, t: Q) -> Result<SliceCheck, KernelError> {
    let kk = kernel(a)?;
    let cells = a.model.slice(t)?.cells();
    let mut diagonal = Vec::new();
    let mut off_diagonal = Vec::new();
    for &c in &cells {
        let s = kk.stalk(c);
        let group = if a.model.on_diagonal(c) { &mut diagonal } else { &mut off_diagonal };
        if !group.contains(&s) {
            group.push(s);
        }
    }
    diagonal.sort();
    off_diagonal.sort();
    let constant = diagonal.len() <= 1 && off_diagonal.len() <= 1;
    Ok(SliceCheck { t: t.to_string(), cells: cells.len(), diagonal, off_diagonal, constant })
}

/// Cells of `small` with `|t| < T − 1` whose stalk differs from the stalk of
/// the same cell in `big`; returns `(mismatches, compared)`.
pub fn window_growth_mismatches<F: Field>(small: &Assembly<F>, big: &Assembly<F>) -> Result<(usize, usize), KernelError> {
    let (ks, kb) = (kernel(small)?, kernel(big)?);
    let index: HashMap<_, u32> = (0..big.model.complex.len() as u32).map(|c| (big.model.key(c), c)).collect();
    let limit = small.model.t_max - Q::from(1);
    let (mut bad, mut seen) = (0, 0);
    for c in 0..small.model.complex.len() as u32 {
        let x = &small.model.complex;
        let inside = x.vertices(c as usize).iter().all(|&v| small.model.time(v).abs() < limit);
        if !inside {
            continue;
        }
        seen += 1;
        match index.get(&small.model.key(c)) {
            Some(&d) if kb.stalk(d) == ks.stalk(c) => {}
            _ => bad += 1,
        }
    }
    Ok((bad, seen))
}

/// Stalk tables and direction profiles at `vs` agree for two assemblies of
/// the same model (e.g. with rescaled generators).
pub fn scaling_invariance<F: Field>(a: &Assembly<F>, b: &Assembly<F>, vs: &[u32], jobs: usize) -> Result<bool, KernelError> {
    let (ka, kb) = (kernel(a)?, kernel(b)?);
    if ka.stalk_table() != kb.stalk_table() {
        return Ok(false);
    }
    Ok(profiles(a, ka, vs, jobs)? == profiles(b, kb, vs, jobs)?)
}
