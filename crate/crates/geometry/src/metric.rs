use std::f64::consts::PI;

use num_complex::Complex64;

use crate::points::{cnorm, ProjectivePoint, SpherePoint};
use crate::{GeomError, UNIT_TOL};

/// Round distance on `S^n`, in `[0, π]`.
pub fn dist_sphere(x: &SpherePoint, y: &SpherePoint) -> f64 {
    debug_assert_eq!(x.n(), y.n());
    x.dot(y).clamp(-1.0, 1.0).acos()
}

/// Fubini–Study distance on `CP^n` normalized to diameter π: `2 arccos |⟨x, y⟩|`.
pub fn dist_cpn(x: &ProjectivePoint, y: &ProjectivePoint) -> f64 {
    debug_assert_eq!(x.n(), y.n());
    2.0 * x.inner(y).norm().clamp(0.0, 1.0).acos()
}

/// Distance from `x` to the cut locus `{-y}` of `y`.
pub fn dist_to_cut_locus_sphere(x: &SpherePoint, y: &SpherePoint) -> f64 {
    PI - dist_sphere(x, y)
}

/// Distance from `x` to the cut locus `D_y = {dist(·, y) = π}`.
pub fn dist_to_cut_locus_cpn(x: &ProjectivePoint, y: &ProjectivePoint) -> f64 {
    PI - dist_cpn(x, y)
}

/// Unit-speed geodesic `cos t · x + sin t · v` for a unit `v ⊥ x`.
pub fn exp_sphere(x: &SpherePoint, v: &[f64], t: f64) -> Result<SpherePoint, GeomError> {
    if v.len() != x.coords().len() {
        return Err(GeomError::Dimension(v.len(), x.coords().len()));
    }
    let nv = v.iter().map(|a| a * a).sum::<f64>().sqrt();
    let along: f64 = v.iter().zip(x.coords()).map(|(a, b)| a * b).sum();
    if (nv - 1.0).abs() > 1e-9 || along.abs() > 1e-9 {
        return Err(GeomError::NotUnit(nv));
    }
    let (c, s) = (t.cos(), t.sin());
    SpherePoint::normalized(x.coords().iter().zip(v).map(|(a, b)| c * a + s * b).collect())
}

/// Geodesic from `(1:0:…:0)` with unit initial direction `z ∈ ℂ^n`:
/// `(cos(t/2) : z_1 sin(t/2) : … : z_n sin(t/2))`.
pub fn exp_cpn(z: &[Complex64], t: f64) -> Result<ProjectivePoint, GeomError> {
    let nz = cnorm(z);
    if (nz - 1.0).abs() > UNIT_TOL.max(1e-10) {
        return Err(GeomError::NotUnit(nz));
    }
    let (c, s) = ((t / 2.0).cos(), (t / 2.0).sin());
    let mut out = Vec::with_capacity(z.len() + 1);
    out.push(Complex64::new(c, 0.0));
    out.extend(z.iter().map(|w| w * s));
    ProjectivePoint::normalized(out)
}
