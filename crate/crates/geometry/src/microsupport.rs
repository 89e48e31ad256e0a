//! Expected conormal directions of the geodesic-flow Lagrangian.
//!
//! A covector over `(x, y, t)` is stored through tangent vectors via the
//! metric: `x` and `y` parts are horizontal vectors at the given unit
//! representatives (real vectors embedded in `ℂ^{n+1}` on the sphere), and
//! `t` is the time component. Every covector of the Lagrangian has `t < 0`.

use num_complex::Complex64;

use crate::points::{cnorm, herm, ProjectivePoint, SpherePoint};

#[derive(Clone, Debug, PartialEq)]
pub struct Covector {
    pub x: Vec<Complex64>,
    pub y: Vec<Complex64>,
    pub t: f64,
}

impl Covector {
    pub fn real(x: &[f64], y: &[f64], t: f64) -> Self {
        let c = |v: &[f64]| v.iter().map(|&a| Complex64::new(a, 0.0)).collect();
        Covector { x: c(x), y: c(y), t }
    }

    fn dist(&self, other: &Covector) -> f64 {
        let dx: Vec<Complex64> = self.x.iter().zip(&other.x).map(|(a, b)| a - b).collect();
        let dy: Vec<Complex64> = self.y.iter().zip(&other.y).map(|(a, b)| a - b).collect();
        (cnorm(&dx).powi(2) + cnorm(&dy).powi(2) + (self.t - other.t).powi(2)).sqrt()
    }

    fn scaled(&self, s: f64) -> Covector {
        Covector { x: self.x.iter().map(|a| a * s).collect(), y: self.y.iter().map(|a| a * s).collect(), t: self.t * s }
    }
}

/// The fibre over a corner point: covectors `(L(a), τ)` with `a` in a
/// parameter space. The Lagrangian itself is `τ = −|a|`; the sum-closure is
/// `|a| ≤ −τ`.
#[derive(Clone, Debug, PartialEq)]
pub enum CornerCone {
    /// `L(a) = (μ a, −a)` for `a ⊥ y`. Sphere: `μ = cos t = ±1`.
    /// Projective, `t ∈ 2πℤ`: `μ = ⟨y, x⟩`.
    Tangent { mu: Complex64, y: Vec<Complex64> },
    /// Projective, `t ∈ π + 2πℤ`, `x ∈ D_y`: `L(c) = (−c̄ y, −c x)`, `c ∈ ℂ`.
    Phase { x: Vec<Complex64>, y: Vec<Complex64> },
}

impl CornerCone {
    /// `|a|` when the spatial part of `cov` lies in the image of `L`.
    pub fn decompose(&self, cov: &Covector, tol: f64) -> Option<f64> {
        match self {
            CornerCone::Tangent { mu, y } => {
                let a: Vec<Complex64> = cov.y.iter().map(|v| -v).collect();
                let resid: Vec<Complex64> = cov.x.iter().zip(&a).map(|(p, q)| p - mu * q).collect();
                (herm(y, &a).norm() <= tol && cnorm(&resid) <= tol).then(|| cnorm(&a))
            }
            CornerCone::Phase { x, y } => {
                let c = -herm(x, &cov.y);
                let ry: Vec<Complex64> = cov.y.iter().zip(x).map(|(p, q)| p + c * q).collect();
                let rx: Vec<Complex64> = cov.x.iter().zip(y).map(|(p, q)| p + c.conj() * q).collect();
                (cnorm(&ry) <= tol && cnorm(&rx) <= tol).then(|| c.norm())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum MicrosupportTarget {
    /// `(x, y, t)` is not on the flow graph.
    Empty,
    /// A single direction class (normalized so that `t = −1`).
    Ray(Covector),
    /// A corner time `t ∈ πℤ`.
    Corner(CornerCone),
}

impl MicrosupportTarget {
    /// Is `cov` a nonzero covector of the Lagrangian itself?
    pub fn contains_lambda(&self, cov: &Covector, tol: f64) -> bool {
        match self {
            MicrosupportTarget::Empty => false,
            MicrosupportTarget::Ray(r) => cov.t < -tol && cov.dist(&r.scaled(-cov.t)) <= tol,
            MicrosupportTarget::Corner(c) => cov.t < -tol && c.decompose(cov, tol).is_some_and(|a| (a + cov.t).abs() <= tol),
        }
    }

    /// Is `cov` a nonzero finite sum of covectors of the Lagrangian?
    pub fn contains_closure(&self, cov: &Covector, tol: f64) -> bool {
        match self {
            MicrosupportTarget::Corner(c) => cov.t < -tol && c.decompose(cov, tol).is_some_and(|a| a <= -cov.t + tol),
            other => other.contains_lambda(cov, tol),
        }
    }
}

fn real(v: &[f64]) -> Vec<Complex64> {
    v.iter().map(|&a| Complex64::new(a, 0.0)).collect()
}

/// Expected directions over `(x, y, t)` on `S^n`, flowing from `y` to `x`.
pub fn expected_ss(x: &SpherePoint, y: &SpherePoint, t: f64, tol: f64) -> MicrosupportTarget {
    let (c, s) = (t.cos(), t.sin());
    if (x.dot(y) - c).abs() > tol {
        return MicrosupportTarget::Empty;
    }
    if s.abs() <= tol {
        let sign = c.signum();
        let gap: f64 = x.coords().iter().zip(y.coords()).map(|(a, b)| (a - sign * b).powi(2)).sum::<f64>().sqrt();
        if gap > tol.sqrt() {
            return MicrosupportTarget::Empty;
        }
        return MicrosupportTarget::Corner(CornerCone::Tangent { mu: Complex64::new(sign, 0.0), y: real(y.coords()) });
    }
    let v: Vec<f64> = x.coords().iter().zip(y.coords()).map(|(a, b)| (a - c * b) / s).collect();
    let vx: Vec<f64> = y.coords().iter().zip(&v).map(|(b, w)| -s * b + c * w).collect();
    let my: Vec<f64> = v.iter().map(|w| -w).collect();
    MicrosupportTarget::Ray(Covector::real(&vx, &my, -1.0))
}

/// Expected directions over `(x, y, t)` on `CP^n` (diameter π, period 2π).
pub fn expected_ss_cpn(x: &ProjectivePoint, y: &ProjectivePoint, t: f64, tol: f64) -> MicrosupportTarget {
    let (c, s) = ((t / 2.0).cos(), (t / 2.0).sin());
    let yx = y.inner(x);
    if (yx.norm() - c.abs()).abs() > tol {
        return MicrosupportTarget::Empty;
    }
    let (xs, ys) = (x.coords().to_vec(), y.coords().to_vec());
    if c.abs() <= tol {
        return MicrosupportTarget::Corner(CornerCone::Phase { x: xs, y: ys });
    }
    if s.abs() <= tol {
        return MicrosupportTarget::Corner(CornerCone::Tangent { mu: yx / yx.norm(), y: ys });
    }
    // choose the representative λx with ⟨y, λx⟩ = cos(t/2)
    let lambda = yx.conj() / yx.norm() * c.signum();
    let v: Vec<Complex64> = xs.iter().zip(&ys).map(|(a, b)| (lambda * a - b * c) / s).collect();
    let wc: Vec<Complex64> = ys.iter().zip(&v).map(|(b, w)| -b * s + w * c).collect();
    let wx = wc.iter().map(|w| lambda.conj() * w).collect();
    MicrosupportTarget::Ray(Covector { x: wx, y: v.iter().map(|w| -w).collect(), t: -1.0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn generic_point_has_one_class() {
        let y = SpherePoint::basis(2, 0);
        let x = crate::exp_sphere(&y, &[0.0, 1.0, 0.0], 0.5).unwrap();
        let MicrosupportTarget::Ray(r) = expected_ss(&x, &y, 0.5, 1e-9) else { panic!() };
        assert!(r.t < 0.0);
        assert!((r.y[1].re + 1.0).abs() < 1e-12);
        assert_eq!(expected_ss(&x, &y, 0.7, 1e-9), MicrosupportTarget::Empty);
    }

    #[test]
    fn corner_at_time_zero() {
        let y = SpherePoint::basis(2, 2);
        let target = expected_ss(&y, &y, 0.0, 1e-9);
        let edge = Covector::real(&[0.6, 0.8, 0.0], &[-0.6, -0.8, 0.0], -1.0);
        let inside = Covector::real(&[0.3, 0.0, 0.0], &[-0.3, 0.0, 0.0], -1.0);
        let time_only = Covector::real(&[0.0; 3], &[0.0; 3], -1.0);
        assert!(target.contains_lambda(&edge, 1e-9));
        assert!(!target.contains_lambda(&inside, 1e-9));
        assert!(target.contains_closure(&inside, 1e-9));
        assert!(target.contains_closure(&time_only, 1e-9));
        assert!(!target.contains_closure(&Covector::real(&[2.0, 0.0, 0.0], &[-2.0, 0.0, 0.0], -1.0), 1e-9));
        assert_eq!(expected_ss(&y, &y.antipode(), 0.0, 1e-9), MicrosupportTarget::Empty);
        assert!(matches!(expected_ss(&y.antipode(), &y, PI, 1e-9), MicrosupportTarget::Corner(_)));
    }
}
