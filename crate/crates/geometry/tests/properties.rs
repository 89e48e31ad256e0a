use std::f64::consts::PI;

use geometry::export::{cpn_row, sphere_row, write_pairs_csv};
use geometry::*;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Fubini–Study speed from central differences of unit representatives:
/// `g(ċ, ċ) = 4 (|ċ|² − |⟨c, ċ⟩|²)`.
fn fs_speed(z: &[Complex64], t: f64) -> f64 {
    let h = 1e-4;
    let (a, b, c) = (exp_cpn(z, t - h).unwrap(), exp_cpn(z, t + h).unwrap(), exp_cpn(z, t).unwrap());
    let d: Vec<Complex64> = a.coords().iter().zip(b.coords()).map(|(p, q)| (q - p) / (2.0 * h)).collect();
    let n2: f64 = d.iter().map(|w| w.norm_sqr()).sum();
    let along: Complex64 = c.coords().iter().zip(&d).map(|(p, q)| p.conj() * q).sum();
    (4.0 * (n2 - along.norm_sqr())).sqrt()
}

#[test]
fn triangle_inequality_and_symmetry() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let (x, y, z) = (random_sphere_point(&mut rng, 3), random_sphere_point(&mut rng, 3), random_sphere_point(&mut rng, 3));
        assert!((dist_sphere(&x, &y) - dist_sphere(&y, &x)).abs() <= 1e-9);
        assert!(dist_sphere(&x, &z) <= dist_sphere(&x, &y) + dist_sphere(&y, &z) + 1e-9);
        let (p, q, r) = (random_projective_point(&mut rng, 2), random_projective_point(&mut rng, 2), random_projective_point(&mut rng, 2));
        assert!((dist_cpn(&p, &q) - dist_cpn(&q, &p)).abs() <= 1e-9);
        assert!(dist_cpn(&p, &r) <= dist_cpn(&p, &q) + dist_cpn(&q, &r) + 1e-9);
    }
}

#[test]
fn projective_geodesics() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let x0 = ProjectivePoint::basis(2, 0);
    for k in 0..100 {
        let z = random_unit_tangent_cpn(&mut rng, 2);
        let t = 2.0 * PI * (k as f64 + 0.5) / 100.0;
        assert!((fs_speed(&z, t) - 1.0).abs() <= 1e-6);
        let m = t.rem_euclid(2.0 * PI);
        assert!((dist_cpn(&x0, &exp_cpn(&z, t).unwrap()) - m.min(2.0 * PI - m)).abs() <= 1e-9);
        let far = exp_cpn(&z, PI).unwrap();
        assert!(dist_to_cut_locus_cpn(&far, &x0).abs() <= 1e-9);
        let p = exp_cpn(&z, t).unwrap();
        let q = exp_cpn(&z, t + 2.0 * PI).unwrap();
        assert!(dist_cpn(&p, &q) <= 1e-9 || (1.0 - p.inner(&q).norm()).abs() <= 1e-9);
    }
}

#[test]
fn bloch_sphere_consistency() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..500 {
        let (p, q) = (random_projective_point(&mut rng, 1), random_projective_point(&mut rng, 1));
        assert!((dist_cpn(&p, &q) - dist_sphere(&bloch(&p), &bloch(&q))).abs() <= 1e-9);
    }
}

#[test]
fn projective_rays_follow_the_flow() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let x0 = ProjectivePoint::basis(2, 0);
    for _ in 0..100 {
        let z = random_unit_tangent_cpn(&mut rng, 2);
        let t = 0.1 + 2.9 * rand::Rng::gen::<f64>(&mut rng);
        let x = exp_cpn(&z, t).unwrap();
        let MicrosupportTarget::Ray(r) = expected_ss_cpn(&x, &x0, t, 1e-9) else { panic!("expected a ray") };
        // the source part is minus the initial direction (0, z)
        assert!(r.y[0].norm() < 1e-9);
        for (a, b) in r.y[1..].iter().zip(&z) {
            assert!((a + b).norm() < 1e-9);
        }
        assert_eq!(r.t, -1.0);
    }
    let d = exp_cpn(&random_unit_tangent_cpn(&mut rng, 2), PI).unwrap();
    let target = expected_ss_cpn(&d, &x0, PI, 1e-9);
    let phase = Complex64::from_polar(1.0, 0.7);
    let cov = Covector {
        x: x0.coords().iter().map(|w| -phase.conj() * w).collect(),
        y: d.coords().iter().map(|w| -phase * w).collect(),
        t: -1.0,
    };
    assert!(target.contains_lambda(&cov, 1e-9));
}

#[test]
fn csv_export() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let rows: Vec<_> = (0..3).map(|_| sphere_row(&random_sphere_point(&mut rng, 2), &random_sphere_point(&mut rng, 2))).collect();
    let mut buf = Vec::new();
    write_pairs_csv(&mut buf, &rows).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert_eq!(text.lines().next(), Some("x0,x1,x2,y0,y1,y2,dist"));
    assert_eq!(text.lines().count(), 4);
    let row = cpn_row(&ProjectivePoint::basis(1, 0), &ProjectivePoint::basis(1, 1));
    assert_eq!(row.0.len(), 4);
    assert!((row.2 - PI).abs() < 1e-12);
}

proptest! {
    #[test]
    fn region_nesting(i in 1i32..6, d in 0.0..PI, t in -20.0f64..20.0) {
        let cut = PI - d;
        if region_member_dist(i + 2, d, cut, t).unwrap() {
            prop_assert!(region_member_dist(i, d, cut, t).unwrap());
        }
        if region_member_dist(-i - 2, d, cut, t).unwrap() {
            prop_assert!(region_member_dist(-i, d, cut, t).unwrap());
        }
    }

    #[test]
    fn exact_matches_float(i in -5i32..6, num in -24i64..25, tn in -60i64..61) {
        prop_assume!(i != 0);
        let (u, t) = (exact::Q::new(num, 12), exact::Q::new(tn, 12));
        let d = exact::circle_dist(u);
        let df = *d.numer() as f64 / *d.denom() as f64 * PI;
        let tf = tn as f64 / 12.0 * PI;
        // compare only away from the boundary where rounding could flip the answer
        let dd = if i % 2 == 0 { PI - df } else { df };
        let edge = if i > 0 { tf - (i - 1) as f64 * PI } else { -tf - (i.abs() - 1) as f64 * PI };
        prop_assume!((dd - edge).abs() > 1e-9);
        prop_assert_eq!(exact::circle_region(i, u, t), region_member_dist(i, df, PI - df, tf).unwrap());
    }
}
