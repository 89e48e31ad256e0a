use std::f64::consts::PI;

use crate::metric::{dist_cpn, dist_sphere};
use crate::points::{ProjectivePoint, SpherePoint};
use crate::GeomError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Space {
    Sphere,
    Projective,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegionSense {
    /// Strict inequality, positive index.
    Open,
    /// Non-strict inequality in negated time, negative index.
    Closed,
}

/// The region `Z_i` over a time window.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegionSpec {
    pub index: i32,
    pub space: Space,
    pub window: (f64, f64),
}

impl RegionSpec {
    pub fn new(index: i32, space: Space, window: (f64, f64)) -> Result<Self, GeomError> {
        if index == 0 {
            return Err(GeomError::ZeroIndex);
        }
        Ok(RegionSpec { index, space, window })
    }

    pub fn sense(&self) -> RegionSense {
        if self.index > 0 {
            RegionSense::Open
        } else {
            RegionSense::Closed
        }
    }

    /// Odd regions are cut out by the distance to `y`, even ones by the
    /// distance to its cut locus.
    pub fn uses_cut_locus(&self) -> bool {
        self.index % 2 == 0
    }
}

/// Points on which a region can be evaluated.
pub trait MetricPoint {
    const SPACE: Space;
    fn dist(&self, other: &Self) -> f64;
    /// `dist(self, D_other)`.
    fn dist_cut(&self, other: &Self) -> f64 {
        PI - self.dist(other)
    }
}

impl MetricPoint for SpherePoint {
    const SPACE: Space = Space::Sphere;
    fn dist(&self, other: &Self) -> f64 {
        dist_sphere(self, other)
    }
}

impl MetricPoint for ProjectivePoint {
    const SPACE: Space = Space::Projective;
    fn dist(&self, other: &Self) -> f64 {
        dist_cpn(self, other)
    }
}

/// Membership given the two relevant distances.
///
/// `i > 0`: `d_i < t − (i−1)π`; `i < 0`: `d_i ≤ −t − (|i|−1)π`, where `d_i`
/// is `dist` for odd `i` and `dist_cut` for even `i`.
pub fn region_member_dist(index: i32, dist: f64, dist_cut: f64, t: f64) -> Result<bool, GeomError> {
    if index == 0 {
        return Err(GeomError::ZeroIndex);
    }
    let d = if index % 2 == 0 { dist_cut } else { dist };
    let shift = (index.abs() - 1) as f64 * PI;
    Ok(if index > 0 { d < t - shift } else { d <= -t - shift })
}

pub fn region_member<P: MetricPoint>(spec: &RegionSpec, x: &P, y: &P, t: f64) -> Result<bool, GeomError> {
    if spec.space != P::SPACE {
        return Err(GeomError::SpaceMismatch);
    }
    if t < spec.window.0 || t > spec.window.1 {
        return Err(GeomError::OutsideWindow(t, spec.window.0, spec.window.1));
    }
    region_member_dist(spec.index, x.dist(y), x.dist_cut(y), t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(i: i32) -> RegionSpec {
        RegionSpec::new(i, Space::Sphere, (-10.0, 10.0)).unwrap()
    }

    #[test]
    fn examples() {
        let x = SpherePoint::basis(2, 0);
        assert!(region_member(&spec(1), &x, &x, 0.1).unwrap());
        assert!(!region_member(&spec(1), &x, &x.antipode(), PI).unwrap());
        assert!(region_member(&spec(-1), &x, &x, 0.0).unwrap());
        assert_eq!(RegionSpec::new(0, Space::Sphere, (0.0, 1.0)), Err(GeomError::ZeroIndex));
        assert!(matches!(region_member(&spec(1), &x, &x, 11.0), Err(GeomError::OutsideWindow(..))));
    }

    #[test]
    fn even_regions_use_the_antipode() {
        let x = SpherePoint::basis(1, 0);
        // dist(x, -y) = 0 when y = -x, so Z_2 holds once t > π
        assert!(region_member(&spec(2), &x, &x.antipode(), PI + 0.01).unwrap());
        assert!(!region_member(&spec(2), &x, &x.antipode(), PI).unwrap());
    }
}
