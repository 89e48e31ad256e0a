use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::{GeomError, UNIT_TOL};

/// A point of the unit sphere `S^n ⊂ ℝ^{n+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpherePoint {
    coords: Vec<f64>,
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub(crate) fn cnorm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Hermitian product, conjugate-linear in the first slot.
pub(crate) fn herm(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

impl SpherePoint {
    /// Accepts a vector whose norm is 1 within `UNIT_TOL`.
    pub fn new(coords: Vec<f64>) -> Result<Self, GeomError> {
        let n = norm(&coords);
        if (n - 1.0).abs() > UNIT_TOL {
            return Err(GeomError::NotUnit(n));
        }
        Ok(SpherePoint { coords })
    }

    /// Normalizes any nonzero vector.
    pub fn normalized(mut coords: Vec<f64>) -> Result<Self, GeomError> {
        let n = norm(&coords);
        if n == 0.0 || !n.is_finite() {
            return Err(GeomError::NotUnit(n));
        }
        coords.iter_mut().for_each(|x| *x /= n);
        Ok(SpherePoint { coords })
    }

    /// `e_k` in `ℝ^{n+1}`.
    pub fn basis(n: usize, k: usize) -> Self {
        let mut c = vec![0.0; n + 1];
        c[k] = 1.0;
        SpherePoint { coords: c }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Dimension `n` of the sphere.
    pub fn n(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn antipode(&self) -> Self {
        SpherePoint { coords: self.coords.iter().map(|x| -x).collect() }
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.coords.iter().zip(&other.coords).map(|(a, b)| a * b).sum()
    }
}

/// A point of `CP^n`, stored as a unit representative in `ℂ^{n+1}`.
#[derive(Clone, Debug)]
pub struct ProjectivePoint {
    coords: Vec<Complex64>,
}

impl PartialEq for ProjectivePoint {
    /// Projective equality: `|⟨z, w⟩| = 1` within tolerance.
    fn eq(&self, other: &Self) -> bool {
        self.coords.len() == other.coords.len() && (herm(&self.coords, &other.coords).norm() - 1.0).abs() <= 1e-9
    }
}

impl ProjectivePoint {
    pub fn new(coords: Vec<Complex64>) -> Result<Self, GeomError> {
        let n = cnorm(&coords);
        if (n - 1.0).abs() > UNIT_TOL {
            return Err(GeomError::NotUnit(n));
        }
        Ok(ProjectivePoint { coords })
    }

    pub fn normalized(mut coords: Vec<Complex64>) -> Result<Self, GeomError> {
        let n = cnorm(&coords);
        if n == 0.0 || !n.is_finite() {
            return Err(GeomError::NotUnit(n));
        }
        coords.iter_mut().for_each(|z| *z /= n);
        Ok(ProjectivePoint { coords })
    }

    /// `(0 : … : 1 : … : 0)` with the 1 in slot `k`.
    pub fn basis(n: usize, k: usize) -> Self {
        let mut c = vec![Complex64::new(0.0, 0.0); n + 1];
        c[k] = Complex64::new(1.0, 0.0);
        ProjectivePoint { coords: c }
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn n(&self) -> usize {
        self.coords.len() - 1
    }

    /// `⟨self, other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        herm(&self.coords, &other.coords)
    }
}

pub fn random_sphere_point<R: Rng + ?Sized>(rng: &mut R, n: usize) -> SpherePoint {
    loop {
        let v: Vec<f64> = (0..=n).map(|_| rng.sample(StandardNormal)).collect();
        if let Ok(p) = SpherePoint::normalized(v) {
            return p;
        }
    }
}

pub fn random_projective_point<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ProjectivePoint {
    loop {
        let v: Vec<Complex64> = (0..=n).map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))).collect();
        if let Ok(p) = ProjectivePoint::normalized(v) {
            return p;
        }
    }
}

/// A random unit vector of `ℂ^n`, a unit tangent direction at `(1:0:…:0)`.
pub fn random_unit_tangent_cpn<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Complex64> {
    random_projective_point(rng, n - 1).coords
}

/// Bloch vector of a point of `CP^1`: the identification with the unit 2-sphere
/// under which `dist_cpn` becomes the round angle.
pub fn bloch(p: &ProjectivePoint) -> SpherePoint {
    assert_eq!(p.n(), 1, "Bloch vectors exist for CP^1 only");
    let (a, b) = (p.coords[0], p.coords[1]);
    let ab = a.conj() * b;
    SpherePoint::normalized(vec![2.0 * ab.re, 2.0 * ab.im, a.norm_sqr() - b.norm_sqr()]).expect("nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_unit() {
        assert!(matches!(SpherePoint::new(vec![1.0, 1.0]), Err(GeomError::NotUnit(_))));
        assert!(SpherePoint::new(vec![0.6, 0.8]).is_ok());
    }

    #[test]
    fn projective_equality_ignores_phase() {
        let i = Complex64::new(0.0, 1.0);
        let p = ProjectivePoint::normalized(vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)]).unwrap();
        let q = ProjectivePoint::normalized(vec![i, i]).unwrap();
        assert_eq!(p, q);
        assert_ne!(p, ProjectivePoint::basis(1, 0));
    }
}
