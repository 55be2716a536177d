use std::f64::consts::PI;

use lc_core::complex_geometry::{derived_semiline, intersect_semiline_circle, mobius_reciprocal, Line};
use lc_core::lzc_engine::{build_frame, dsd, terminal_curve_point, terminal_semiline, zc_circle, zc_point};
use lc_core::polynomial::oracle_roots;
use lc_core::{minimize_dsd, MonicPolynomial, OptimizerConfig, C64};
use proptest::prelude::*;

fn point(r: f64) -> impl Strategy<Value = C64> {
    (-r..r, -r..r).prop_map(|(re, im)| C64::new(re, im))
}

/// Roots in the unit square, pairwise at least `sep` apart.
fn roots(min: usize, max: usize, sep: f64) -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec(point(1.0), min..=max).prop_filter("separated roots", move |rs| {
        rs.iter()
            .enumerate()
            .all(|(i, a)| rs[i + 1..].iter().all(|b| (a - b).norm() >= sep))
    })
}

fn worst_match(want: &[C64], got: &[C64]) -> f64 {
    want.iter()
        .map(|r| got.iter().map(|z| (z - r).norm()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mobius_is_an_involution(z in point(10.0).prop_filter("nonzero", |z| z.norm() > 1e-6)) {
        let back = mobius_reciprocal(mobius_reciprocal(z).unwrap()).unwrap();
        prop_assert!((back - z).norm() <= 1e-12 * z.norm());
    }

    #[test]
    fn reciprocal_of_a_line_lies_on_a_circle_through_origin(
        p in point(3.0).prop_filter("off origin", |p| p.norm() > 0.1),
        theta in -PI..PI,
        t in -5.0..5.0f64,
    ) {
        let line = Line::from_angle(p, theta);
        let z = line.at(t);
        prop_assume!(z.norm() > 1e-3 && (p + line.direction).norm() > 1e-3);
        // A line through the origin maps to a line, not a circle.
        prop_assume!((p.re * line.direction.im - p.im * line.direction.re).abs() > 1e-3);
        let a = mobius_reciprocal(p).unwrap();
        let b = mobius_reciprocal(p + line.direction).unwrap();
        let w = mobius_reciprocal(z).unwrap();
        let center = lc_core::complex_geometry::center_zcircle(a, b).unwrap();
        let r = center.norm();
        prop_assert!(((w - center).norm() - r).abs() <= 1e-7 * r.max(1.0));
    }

    #[test]
    fn derived_semiline_traces_products(p in point(2.0), theta in -PI..PI, t in 0.0..4.0f64) {
        let line = Line::from_angle(p, theta);
        let q = (p - line.direction * t) * (p + line.direction * t);
        prop_assert!((derived_semiline(&line).at_t(t) - q).norm() <= 1e-12 * (1.0 + q.norm()));
    }

    #[test]
    fn intersections_lie_on_the_circle(q in point(2.0), theta in -PI..PI, c in point(2.0), r in 0.01..3.0f64) {
        let v = C64::from_polar(1.0, theta);
        let ip = intersect_semiline_circle(q, v, c, r);
        for (i, t) in [(ip.i1, ip.t1), (ip.i2, ip.t2)] {
            if let (Some(i), Some(t)) = (i, t) {
                prop_assert!(((i - c).norm() - r).abs() <= 1e-9 * (1.0 + r));
                prop_assert!((q + v * t - i).norm() <= 1e-9 * (1.0 + t.abs()));
            }
        }
        if let Some(t1) = ip.t1 {
            prop_assert!(t1 <= ip.t2.unwrap());
        }
    }

    #[test]
    fn vieta_roundtrip(rs in roots(2, 8, 0.1)) {
        let p = MonicPolynomial::from_roots(&rs).unwrap();
        let found = oracle_roots(&p).unwrap().roots;
        prop_assert_eq!(found.len(), rs.len());
        prop_assert!(worst_match(&rs, &found) <= 1e-8);
        for r in &rs {
            prop_assert!(p.evaluate(*r).norm() <= 1e-10);
        }
    }

    #[test]
    fn shift_moves_every_root(rs in roots(2, 7, 0.1), a in point(5.0)) {
        let p = MonicPolynomial::from_roots(&rs).unwrap();
        let moved: Vec<C64> = rs.iter().map(|r| r + a).collect();
        let found = oracle_roots(&p.shift_variable(a)).unwrap().roots;
        prop_assert!(worst_match(&moved, &found) <= 1e-7 * (1.0 + a.norm()));
    }

    #[test]
    fn zc_points_stay_on_the_zc_circle(rs in roots(3, 7, 0.1), theta in -PI..PI, t in 0.0..3.0f64) {
        let p = MonicPolynomial::from_roots(&rs).unwrap();
        let (Ok(circle), Ok(z)) = (zc_circle(&p, theta), zc_point(&p, theta, t)) else {
            return Ok(());
        };
        let gap = ((z - circle.center).norm() - circle.radius).abs();
        prop_assert!(gap <= 1e-7 * (1.0 + circle.radius), "gap {gap:e}");
    }

    #[test]
    fn dsd_is_the_scaled_residual(rs in roots(4, 8, 0.1), theta in -PI..PI, t in 0.0..3.0f64) {
        let p = MonicPolynomial::from_roots(&rs).unwrap();
        let z = p.p1() + C64::from_polar(1.0, theta) * t;
        prop_assume!(z.norm() > 1e-3);
        let want = (p.evaluate(z) / z).norm_sqr();
        let got = dsd(&p, theta, t).unwrap();
        prop_assert!((got - want).abs() <= 1e-9 * (1.0 + want));
        // Reversing the line direction traces the same points.
        let mirrored = dsd(&p, theta + PI, -t).unwrap();
        prop_assert!((got - mirrored).abs() <= 1e-12 * got.max(1.0));
    }

    #[test]
    fn frame_invariants(rs in roots(3, 6, 0.15), theta in -PI..PI) {
        let p = MonicPolynomial::from_roots(&rs).unwrap();
        let t_star = if p.degree() >= 4 {
            minimize_dsd(&p, theta, &OptimizerConfig::default()).unwrap().t_star
        } else {
            None
        };
        let f = build_frame(&p, theta, t_star).unwrap();
        for e in [f.e_a, f.e_b].into_iter().flatten() {
            prop_assert!(e > -1.0 && e <= 1.0, "e = {}", e);
        }
        if let Some(t) = t_star {
            prop_assert!(t >= 0.0);
            let tl = terminal_semiline(&p, theta, f.rx.unwrap()).unwrap().at_t(t);
            let tc = terminal_curve_point(&p, theta, t).unwrap();
            prop_assert!((tl - tc).norm() <= 1e-9 * tc.norm().max(1.0));
        }
    }
}
