use lc_core::complex_geometry::{
    center_zcircle, complex_sqrt_pair, derived_semiline, intersect_semiline_circle, mobius_reciprocal, Line,
};
use lc_core::{LcError, C64};

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn close(a: C64, b: C64, tol: f64) -> bool {
    (a - b).norm() <= tol
}

#[test]
fn reciprocal_of_zero_is_an_error() {
    assert_eq!(mobius_reciprocal(c(0.0, 0.0)), Err(LcError::ReciprocalOfZero));
    assert!(close(mobius_reciprocal(c(0.0, 2.0)).unwrap(), c(0.0, -0.5), 1e-15));
}

#[test]
fn sqrt_pairs() {
    let (a, b) = complex_sqrt_pair(c(0.0, 2.0));
    assert!(close(a, c(1.0, 1.0), 1e-15) && close(b, c(-1.0, -1.0), 1e-15));
    let (a, b) = complex_sqrt_pair(c(-1.0, 0.0));
    assert!(close(a, c(0.0, 1.0), 1e-15) && close(b, c(0.0, -1.0), 1e-15));
    assert_eq!(complex_sqrt_pair(c(0.0, 0.0)).0, c(0.0, 0.0));
}

#[test]
fn derived_semiline_of_quadratic_line() {
    let line = Line::from_angle(c(-0.5, -0.5), -1.249046);
    let s = derived_semiline(&line);
    assert!(close(s.anchor, c(0.0, 0.5), 1e-15));
    assert!((s.direction.norm() - 1.0).abs() < 1e-15);
}

#[test]
fn zcircle_center_matches_circumcenter() {
    let center = center_zcircle(c(-4.0, 0.0), c(-1.531057, 1.186342)).unwrap();
    assert!(close(center, c(-2.0, -1.0), 1e-6));
    assert_eq!(center_zcircle(c(1.0, 1.0), c(2.0, 2.0)), Err(LcError::DegenerateCircle));
    // Equidistant from both points and the origin.
    let (p1, p2) = (c(0.3, -1.7), c(2.2, 0.4));
    let m = center_zcircle(p1, p2).unwrap();
    let r = m.norm();
    assert!(((p1 - m).norm() - r).abs() < 1e-12 && ((p2 - m).norm() - r).abs() < 1e-12);
}

#[test]
fn image_of_a_line_lies_on_the_zcircle() {
    let (p, v, b) = (c(0.7, -0.2), C64::from_polar(1.0, 2.1), c(1.3, 0.4));
    let img = |t: f64| b / (p + v * t);
    let m = center_zcircle(img(0.0), img(1.0)).unwrap();
    for k in -50..50 {
        let w = img(k as f64 * 0.37);
        assert!(((w - m).norm() - m.norm()).abs() < 1e-9);
    }
}

#[test]
fn semiline_circle_intersections() {
    let ip = intersect_semiline_circle(c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), 1.0);
    assert_eq!((ip.t1, ip.t2, ip.relevance), (Some(1.0), Some(3.0), 2));

    let ip = intersect_semiline_circle(c(-0.5, -0.5), c(0.3162278, -0.9486833), c(-2.0, -1.0), 5f64.sqrt());
    assert_eq!(ip.relevance, 1);
    assert!(close(ip.i1.unwrap(), c(-1.0, 1.0), 1e-6));
    assert!(close(ip.i2.unwrap(), c(0.0, -2.0), 1e-6));
    assert!(ip.relevant_i1().is_none() && ip.relevant_i2().is_some());

    let ip = intersect_semiline_circle(c(0.0, 0.0), c(1.0, 0.0), c(0.0, 5.0), 1.0);
    assert_eq!(ip.relevance, 0);
    assert!(ip.i1.is_none() && ip.i2.is_none());
}

#[test]
fn direction_is_renormalized() {
    let a = intersect_semiline_circle(c(0.0, 0.0), c(3.0, 0.0), c(2.0, 0.0), 1.0);
    assert_eq!(a.t1, Some(1.0));
}
