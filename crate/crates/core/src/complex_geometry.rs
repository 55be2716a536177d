//! Plane geometry on complex numbers: lines, derived semi-lines, z-circumferences and
//! semi-line/circle intersections.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{LcError, Result};
use crate::ser;

/// A point or vector in the complex plane.
pub type ComplexPoint = Complex64;

/// Unit vector `cos θ + i sin θ`.
#[inline]
pub fn unit(theta: f64) -> ComplexPoint {
    let (s, c) = theta.sin_cos();
    Complex64::new(c, s)
}

/// Line `{p + t v : t ∈ ℝ}` with a unit direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Line {
    #[serde(serialize_with = "ser::complex")]
    pub fixed_point: ComplexPoint,
    #[serde(serialize_with = "ser::complex")]
    pub direction: ComplexPoint,
}

impl Line {
    /// Builds a line, normalizing `direction`. Panics on a zero direction.
    pub fn new(fixed_point: ComplexPoint, direction: ComplexPoint) -> Self {
        let n = direction.norm();
        assert!(n > 0.0, "line direction must be nonzero");
        Line {
            fixed_point,
            direction: direction / n,
        }
    }

    pub fn from_angle(fixed_point: ComplexPoint, theta: f64) -> Self {
        Line {
            fixed_point,
            direction: unit(theta),
        }
    }

    pub fn at(&self, t: f64) -> ComplexPoint {
        self.fixed_point + self.direction * t
    }
}

/// Semi-line `{anchor + s·direction : s ≥ 0}`. Derived and terminal semi-lines are
/// traced with `s = t²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SemiLine {
    #[serde(serialize_with = "ser::complex")]
    pub anchor: ComplexPoint,
    #[serde(serialize_with = "ser::complex")]
    pub direction: ComplexPoint,
}

impl SemiLine {
    pub fn at_param(&self, s: f64) -> ComplexPoint {
        self.anchor + self.direction * s
    }

    /// Point reached with the squared parameter, `anchor + t²·direction`.
    pub fn at_t(&self, t: f64) -> ComplexPoint {
        self.at_param(t * t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Circle {
    #[serde(serialize_with = "ser::complex")]
    pub center: ComplexPoint,
    pub radius: f64,
}

impl Circle {
    /// Circle through the origin with the given center.
    pub fn through_origin(center: ComplexPoint) -> Self {
        Circle {
            center,
            radius: center.norm(),
        }
    }
}

/// Intersections of a semi-line with a circle.
///
/// `i1`/`t1` always come from the negative radical and `i2`/`t2` from the positive one,
/// so the labels stay continuous while θ varies. Both are present whenever the
/// supporting line meets the circle; `relevance` says how many lie on the semi-line.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct IntersectionPair {
    #[serde(serialize_with = "ser::opt_complex")]
    pub i1: Option<ComplexPoint>,
    #[serde(serialize_with = "ser::opt_complex")]
    pub i2: Option<ComplexPoint>,
    pub t1: Option<f64>,
    pub t2: Option<f64>,
    pub relevance: u8,
}

impl IntersectionPair {
    /// I1, only when it lies on the semi-line (relevance 2).
    pub fn relevant_i1(&self) -> Option<ComplexPoint> {
        if self.relevance == 2 {
            self.i1
        } else {
            None
        }
    }

    /// I2, when it lies on the semi-line (relevance 1 or 2).
    pub fn relevant_i2(&self) -> Option<ComplexPoint> {
        if self.relevance >= 1 {
            self.i2
        } else {
            None
        }
    }
}

/// `1/z` written as `conj(z)/|z|²`.
pub fn mobius_reciprocal(z: ComplexPoint) -> Result<ComplexPoint> {
    let n2 = z.norm_sqr();
    if n2 == 0.0 {
        return Err(LcError::ReciprocalOfZero);
    }
    Ok(z.conj() / n2)
}

/// Both square roots of `a`, principal one first (argument in (−π/2, π/2]).
pub fn complex_sqrt_pair(a: ComplexPoint) -> (ComplexPoint, ComplexPoint) {
    let mut r = a.sqrt();
    // sqrt(-x - 0i) lands on -i·√x; keep the half-open branch (−π/2, π/2].
    if r.re == 0.0 && r.im < 0.0 {
        r = -r;
    }
    if r.re == 0.0 {
        r.re = 0.0;
    }
    (r, -r)
}

/// Semi-line traced by `(p - t v)(p + t v) = p² - t² v²`.
pub fn derived_semiline(line: &Line) -> SemiLine {
    let v = line.direction;
    SemiLine {
        anchor: line.fixed_point * line.fixed_point,
        direction: -(v * v),
    }
}

/// Center of the circle through `p1`, `p2` and the origin.
pub fn center_zcircle(p1: ComplexPoint, p2: ComplexPoint) -> Result<ComplexPoint> {
    let (x1, y1, x2, y2) = (p1.re, p1.im, p2.re, p2.im);
    let d = 2.0 * x1 * y2 - 2.0 * y1 * x2;
    let scale = p1.norm().max(p2.norm());
    if !d.is_finite() || d.abs() < 1e-12 * scale * scale || d == 0.0 {
        return Err(LcError::DegenerateCircle);
    }
    let n1 = x1 * x1 + y1 * y1;
    let n2 = x2 * x2 + y2 * y2;
    let h = (y2 * n1 - y1 * n2) / d;
    let k = (x1 * n2 - x2 * n1) / d;
    Ok(Complex64::new(h, k))
}

/// Intersections of the semi-line `q + s·v` (`s ≥ 0`, `v` renormalized) with the circle
/// of center `c` and radius `r`.
pub fn intersect_semiline_circle(q: ComplexPoint, v: ComplexPoint, c: ComplexPoint, r: f64) -> IntersectionPair {
    let vn = v.norm();
    if vn == 0.0 || !vn.is_finite() {
        return IntersectionPair::default();
    }
    let v = v / vn;
    let cq = c - q;
    let dot = cq.re * v.re + cq.im * v.im;
    let delta = dot * dot + r * r - (cq.re * cq.re + cq.im * cq.im);
    if !(delta >= 0.0) {
        return IntersectionPair::default();
    }
    let sd = delta.sqrt();
    let t1 = dot - sd;
    let t2 = dot + sd;
    let relevance = if t1 >= 0.0 && t2 >= 0.0 {
        2
    } else if t1 < 0.0 && t2 >= 0.0 {
        1
    } else {
        0
    };
    IntersectionPair {
        i1: Some(q + v * t1),
        i2: Some(q + v * t2),
        t1: Some(t1),
        t2: Some(t2),
        relevance,
    }
}
