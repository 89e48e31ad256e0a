//! Exact predicates on the circle, with angles as rational multiples of π.

use num_rational::Rational64;
use num_traits::{Signed, Zero};

pub type Q = Rational64;

/// Reduces an angle into `(−1, 1]` (units of π).
pub fn wrap_angle(u: Q) -> Q {
    let two = Q::from(2);
    let mut y = u - (u / two).floor() * two;
    if y > Q::from(1) {
        y -= two;
    }
    y
}

/// Round distance on the unit circle between angles differing by `u`.
pub fn circle_dist(u: Q) -> Q {
    wrap_angle(u).abs()
}

/// Exact region membership from the distance to `y` (units of π); the
/// distance to the cut locus is `1 − dist`.
pub fn region_member_exact(index: i32, dist: Q, t: Q) -> bool {
    assert!(index != 0, "region index must be nonzero");
    let d = if index % 2 == 0 { Q::from(1) - dist } else { dist };
    let shift = Q::from((index.abs() - 1) as i64);
    if index > 0 {
        d < t - shift
    } else {
        d <= -t - shift
    }
}

/// Region membership at angle difference `u = θx − θy` on `S^1`.
pub fn circle_region(index: i32, u: Q, t: Q) -> bool {
    region_member_exact(index, circle_dist(u), t)
}

/// Integer direction classes `(du, dw, dt)` of the Lagrangian over the point
/// with angle difference `u` and time `t`, in the coordinates
/// `u = θx − θy`, `w = θy`. With `closure`, corner fibres are replaced by
/// their sum-closure `{a_w = 0, a_t ≤ −|a_u|}`.
pub fn circle_expected(u: Q, t: Q, closure: bool) -> Vec<[i8; 3]> {
    let plus = wrap_angle(u - t).is_zero();
    let minus = wrap_angle(u + t).is_zero();
    let mut out = Vec::new();
    if minus {
        out.push([-1, 0, -1]);
    }
    if plus && minus && closure {
        out.push([0, 0, -1]);
    }
    if plus {
        out.push([1, 0, -1]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrapping() {
        assert_eq!(wrap_angle(Q::from(3)), Q::from(1));
        assert_eq!(wrap_angle(Q::from(-1)), Q::from(1));
        assert_eq!(wrap_angle(Q::new(5, 2)), Q::new(1, 2));
        assert_eq!(circle_dist(Q::new(-3, 2)), Q::new(1, 2));
    }

    #[test]
    fn fronts_and_corners() {
        let h = Q::new(1, 2);
        assert_eq!(circle_expected(h, h, false), vec![[1, 0, -1]]);
        assert_eq!(circle_expected(-h, h, false), vec![[-1, 0, -1]]);
        assert_eq!(circle_expected(Q::zero(), Q::zero(), true).len(), 3);
        assert_eq!(circle_expected(Q::from(1), Q::from(1), false).len(), 2);
        assert!(circle_expected(Q::zero(), h, true).is_empty());
    }

    #[test]
    fn strictness() {
        assert!(!circle_region(1, Q::from(1), Q::from(1)));
        assert!(circle_region(-1, Q::zero(), Q::zero()));
        assert!(circle_region(2, Q::from(1), Q::new(11, 10)));
        assert!(!circle_region(2, Q::from(1), Q::from(1)));
    }
}
