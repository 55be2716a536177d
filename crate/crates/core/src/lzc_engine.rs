//! LzC(θ) structures: line ℓ1, z-circumference zC, terminal curve tC, terminal semi-line
//! tL, their intersections, the projections onto ℓ1 and the weighted errors.
//!
//! Sign conventions for degree `n`: `tC` carries `(-1)^(n+1)` and `zC` carries `(-1)^n`.
//! Along ℓ1 the two curves satisfy `Z·(tC - zC) = (-1)^(n+1) p(Z)` with `Z = P1 + t v`, so
//! the dynamic squared distance vanishes exactly at the roots on the line.

use num_complex::Complex64;
use serde::Serialize;

use crate::complex_geometry::{
    center_zcircle, intersect_semiline_circle, unit, Circle, ComplexPoint, IntersectionPair, Line, SemiLine,
};
use crate::error::{LcError, Result};
use crate::polynomial::MonicPolynomial;
use crate::ser;

const POLE_EPS: f64 = 1e-300;

/// Closed-form LC solution of `z² + C1 z + C2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadraticSolution {
    #[serde(serialize_with = "ser::complex")]
    pub r1: ComplexPoint,
    #[serde(serialize_with = "ser::complex")]
    pub r2: ComplexPoint,
    /// Direction of ℓ1(θ*).
    #[serde(serialize_with = "ser::complex")]
    pub v: ComplexPoint,
    pub theta_star: f64,
}

/// θ* = arg(C1²/4 − C2)/2; `atan2(0, 0)` gives 0.
pub fn quadratic_theta_star(c1: ComplexPoint, c2: ComplexPoint) -> f64 {
    let w = c1 * c1 / 4.0 - c2;
    w.im.atan2(w.re) / 2.0
}

/// Roots `P1 ∓ sqrt(|C2 − P1²|)·v(θ*)`, `r1` taking the minus sign.
pub fn solve_quadratic(c1: ComplexPoint, c2: ComplexPoint) -> QuadraticSolution {
    let p1 = -c1 / 2.0;
    let theta_star = quadratic_theta_star(c1, c2);
    let v = unit(theta_star);
    let rad = (c2 - p1 * p1).norm().sqrt();
    QuadraticSolution {
        r1: p1 - v * rad,
        r2: p1 + v * rad,
        v,
        theta_star,
    }
}

/// Precomputed data for one line ℓ1(θ) of a polynomial of degree ≥ 3.
#[derive(Debug, Clone)]
pub(crate) struct LineFrame {
    pub(crate) p1: Complex64,
    pub(crate) v: Complex64,
    sign_tc: f64,
    sign_zc: f64,
    cn: Complex64,
    /// `C2 .. C(n-1)`, highest power first for Horner.
    middle: Vec<Complex64>,
}

impl LineFrame {
    pub(crate) fn new(p: &MonicPolynomial, theta: f64) -> Self {
        let n = p.degree();
        debug_assert!(n >= 3);
        let sign_zc = if n % 2 == 0 { 1.0 } else { -1.0 };
        LineFrame {
            p1: p.p1(),
            v: unit(theta),
            sign_tc: -sign_zc,
            sign_zc,
            cn: p.c(n),
            middle: p.coeffs()[1..n - 1].to_vec(),
        }
    }

    #[inline]
    pub(crate) fn z(&self, t: f64) -> Complex64 {
        self.p1 + self.v * t
    }

    /// Terminal curve `(-1)^(n+1) [Σ C(n-i) Z^(i-1) + Z^(n-3) (C2 − (P1 + tv)(P1 − tv))]`,
    /// evaluated by Horner as `(-1)^(n+1) [-(P1 − tv) Z^(n-2) + C2 Z^(n-3) + ... + C(n-1)]`.
    #[inline]
    pub(crate) fn tc(&self, t: f64) -> Complex64 {
        let z = self.z(t);
        let mut acc = -(self.p1 - self.v * t);
        for &c in &self.middle {
            acc = acc * z + c;
        }
        acc * self.sign_tc
    }

    #[inline]
    pub(crate) fn zc(&self, t: f64) -> Result<Complex64> {
        let z = self.z(t);
        if z.norm() < POLE_EPS {
            return Err(LcError::Pole);
        }
        Ok(self.cn * self.sign_zc / z)
    }

    #[inline]
    pub(crate) fn dsd(&self, t: f64) -> Result<f64> {
        let d = self.tc(t) - self.zc(t)?;
        Ok(d.norm_sqr())
    }

    pub(crate) fn zc_circle(&self) -> Result<Circle> {
        if self.p1.norm() < POLE_EPS || (self.p1 + self.v).norm() < POLE_EPS {
            return Err(LcError::DegenerateCircle);
        }
        let a = self.cn * self.sign_zc / self.p1;
        let b = self.cn * self.sign_zc / (self.p1 + self.v);
        Ok(Circle::through_origin(center_zcircle(a, b)?))
    }

    /// Terminal semi-line anchored at
    /// `(-1)^(n+1) [Σ C(n-i) Rx^(i-1) + Rx^(n-3) (C2 − P1²)]` with direction
    /// `(-1)^(n+1) Rx^(n-3) v²`. For `n = 3` this is `C2 − P1² + t² v²` and `rx` is unused.
    pub(crate) fn terminal_semiline(&self, rx: Complex64) -> SemiLine {
        let mut acc = self.middle[0] - self.p1 * self.p1;
        let mut pow = Complex64::new(1.0, 0.0);
        for &c in &self.middle[1..] {
            acc = acc * rx + c;
            pow *= rx;
        }
        SemiLine {
            anchor: acc * self.sign_tc,
            direction: pow * self.v * self.v * self.sign_tc,
        }
    }

    /// Projections of an intersection onto ℓ1: via tL (`i0`) and via zC (`c0`).
    pub(crate) fn projections(&self, i: Complex64, tl: &SemiLine) -> Result<(Complex64, Complex64)> {
        if i.norm() < POLE_EPS {
            return Err(LcError::ProjectionPole);
        }
        if tl.direction.norm() == 0.0 {
            return Err(LcError::DegenerateProjections);
        }
        let s = ((i - tl.anchor) / tl.direction).re.max(0.0);
        let i0 = self.p1 + self.v * s.sqrt();
        let c0 = self.cn * self.sign_zc / i;
        Ok((i0, c0))
    }
}

fn require_degree(p: &MonicPolynomial, min: usize, hint: &'static str) -> Result<()> {
    if p.degree() < min {
        return Err(LcError::Degree {
            degree: p.degree(),
            hint,
        });
    }
    Ok(())
}

/// Point of the terminal curve tC(θ, t) (degree ≥ 4).
pub fn terminal_curve_point(p: &MonicPolynomial, theta: f64, t: f64) -> Result<ComplexPoint> {
    require_degree(p, 4, "use the cubic or quadratic path")?;
    Ok(LineFrame::new(p, theta).tc(t))
}

/// Point `(-1)^n Cn / (P1 + t v)` of the z-circumference.
pub fn zc_point(p: &MonicPolynomial, theta: f64, t: f64) -> Result<ComplexPoint> {
    let n = p.degree();
    let z = p.p1() + unit(theta) * t;
    if z.norm() < POLE_EPS {
        return Err(LcError::Pole);
    }
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    Ok(p.c(n) * sign / z)
}

/// z-circumference of ℓ1(θ): the circle through the origin and the images of `P1`
/// and `P1 + v`.
pub fn zc_circle(p: &MonicPolynomial, theta: f64) -> Result<Circle> {
    require_degree(p, 2, "degree must be at least 2")?;
    let n = p.degree();
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let p1 = p.p1();
    let v = unit(theta);
    if p1.norm() < POLE_EPS || (p1 + v).norm() < POLE_EPS {
        return Err(LcError::DegenerateCircle);
    }
    let a = p.c(n) * sign / p1;
    let b = p.c(n) * sign / (p1 + v);
    Ok(Circle::through_origin(center_zcircle(a, b)?))
}

/// Dynamic squared distance `|tC(θ,t) − zC(θ,t)|²` (degree ≥ 4).
pub fn dsd(p: &MonicPolynomial, theta: f64, t: f64) -> Result<f64> {
    require_degree(p, 4, "use the cubic or quadratic path")?;
    LineFrame::new(p, theta).dsd(t)
}

/// `Rx = P1 + t* v(θ)`.
pub fn best_estimate(p: &MonicPolynomial, theta: f64, t_star: f64) -> Result<ComplexPoint> {
    if !(t_star >= 0.0) {
        return Err(LcError::NegativeT(t_star));
    }
    Ok(p.p1() + unit(theta) * t_star)
}

/// Terminal semi-line tL through the current estimate `rx` (degree ≥ 4).
pub fn terminal_semiline(p: &MonicPolynomial, theta: f64, rx: ComplexPoint) -> Result<SemiLine> {
    require_degree(p, 4, "use the cubic path")?;
    Ok(LineFrame::new(p, theta).terminal_semiline(rx))
}

/// Projections `(i0, c0)` of an intersection `I` onto ℓ1(θ).
///
/// `i0 = P1 + sqrt(max(Re((I − aP)/v_tL), 0)) v`; the clamp only matters for round-off
/// at tangential intersections. `c0 = (-1)^n Cn / I`.
pub fn projections(
    p: &MonicPolynomial,
    theta: f64,
    intersection: ComplexPoint,
    tl: &SemiLine,
) -> Result<(ComplexPoint, ComplexPoint)> {
    require_degree(p, 3, "degree must be at least 3")?;
    LineFrame::new(p, theta).projections(intersection, tl)
}

/// Absolute resolution of weighted errors: `e` is a ratio of O(1) distances, so values
/// closer than this are indistinguishable after rounding.
pub const E_TIE: f64 = 1e-12;

/// `sgn(Re((i0 − c0)/v)) |i0 − c0| / (|i0 − P1| + |c0 − P1|)`, with `sgn(0) = 0`.
pub fn weighted_error(p1: ComplexPoint, v: ComplexPoint, i0: ComplexPoint, c0: ComplexPoint) -> Result<f64> {
    let den = (i0 - p1).norm() + (c0 - p1).norm();
    if !(den > 0.0) || !den.is_finite() {
        return Err(LcError::DegenerateProjections);
    }
    let dir = ((i0 - c0) / v).re;
    let sign = if dir > 0.0 {
        1.0
    } else if dir < 0.0 {
        -1.0
    } else {
        0.0
    };
    // The ratio is exactly 1 when P1 lies between i0 and c0; rounding can overshoot it.
    Ok(sign * ((i0 - c0).norm() / den).min(1.0))
}

/// The structure LzC(θ) with every derived quantity; undefined parts are `None`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LzCFrame {
    pub degree: usize,
    pub theta: f64,
    #[serde(serialize_with = "ser::complex")]
    pub p1: ComplexPoint,
    #[serde(serialize_with = "ser::complex")]
    pub v_theta: ComplexPoint,
    pub t_star: Option<f64>,
    pub min_d2: Option<f64>,
    #[serde(serialize_with = "ser::opt_complex")]
    pub rx: Option<ComplexPoint>,
    #[serde(serialize_with = "ser::opt_complex")]
    pub anchor_point: Option<ComplexPoint>,
    #[serde(serialize_with = "ser::opt_complex")]
    pub v_tl: Option<ComplexPoint>,
    pub zc: Option<Circle>,
    pub intersections: IntersectionPair,
    #[serde(serialize_with = "ser::pair_opt_complex")]
    pub proj_i0: (Option<ComplexPoint>, Option<ComplexPoint>),
    #[serde(serialize_with = "ser::pair_opt_complex")]
    pub proj_c0: (Option<ComplexPoint>, Option<ComplexPoint>),
    pub e_a: Option<f64>,
    pub e_b: Option<f64>,
    /// Why part of the frame is undefined, if it is.
    pub reason: Option<String>,
}

impl LzCFrame {
    pub fn line(&self) -> Line {
        Line::from_angle(self.p1, self.theta)
    }

    pub fn terminal_semiline(&self) -> Option<SemiLine> {
        Some(SemiLine {
            anchor: self.anchor_point?,
            direction: self.v_tl?,
        })
    }

    /// Cubic estimate: `(i0 + c0)/2` of the intersection with the smaller `|e|`,
    /// or of I2 when it is the only relevant intersection. `|e_A|` and `|e_B|` closer
    /// than [`E_TIE`] count as equal and resolve to I2.
    pub fn cubic_estimate(&self) -> Option<ComplexPoint> {
        let via_i1 = self.proj_i0.0.zip(self.proj_c0.0).map(|(a, b)| (a + b) / 2.0);
        let via_i2 = self.proj_i0.1.zip(self.proj_c0.1).map(|(a, b)| (a + b) / 2.0);
        match self.intersections.relevance {
            2 => {
                let ea = self.e_a.map_or(f64::INFINITY, f64::abs);
                let eb = self.e_b.map_or(f64::INFINITY, f64::abs);
                if ea < eb - E_TIE {
                    via_i1
                } else {
                    via_i2
                }
            }
            1 => via_i2,
            _ => None,
        }
    }
}

/// Builds LzC(θ). Degree 3 needs no `t_star`; for degree ≥ 4 the terminal semi-line
/// depends on `Rx = P1 + t* v`, so without a (non-negative) `t_star` everything past ℓ1
/// and zC stays undefined. A degenerate zC leaves the intersections undefined.
pub fn build_frame(p: &MonicPolynomial, theta: f64, t_star: Option<f64>) -> Result<LzCFrame> {
    require_degree(p, 3, "use the quadratic solver")?;
    let lf = LineFrame::new(p, theta);
    build_frame_with(p, &lf, theta, t_star)
}

pub(crate) fn build_frame_with(
    p: &MonicPolynomial,
    lf: &LineFrame,
    theta: f64,
    t_star: Option<f64>,
) -> Result<LzCFrame> {
    let n = p.degree();
    let mut frame = LzCFrame {
        degree: n,
        theta,
        p1: lf.p1,
        v_theta: lf.v,
        t_star: None,
        min_d2: None,
        rx: None,
        anchor_point: None,
        v_tl: None,
        zc: None,
        intersections: IntersectionPair::default(),
        proj_i0: (None, None),
        proj_c0: (None, None),
        e_a: None,
        e_b: None,
        reason: None,
    };
    // zC depends only on ℓ1, so it is reported even when t* is missing.
    match lf.zc_circle() {
        Ok(c) => frame.zc = Some(c),
        Err(e) => frame.reason = Some(e.to_string()),
    }
    let tl = if n == 3 {
        lf.terminal_semiline(lf.p1)
    } else {
        match t_star {
            Some(t) if t >= 0.0 => {
                frame.t_star = Some(t);
                frame.min_d2 = lf.dsd(t).ok();
                let rx = lf.z(t);
                frame.rx = Some(rx);
                lf.terminal_semiline(rx)
            }
            Some(t) => {
                frame.reason = Some(LcError::NegativeT(t).to_string());
                return Ok(frame);
            }
            None => {
                frame.reason = Some("t* undefined".into());
                return Ok(frame);
            }
        }
    };
    frame.anchor_point = Some(tl.anchor);
    frame.v_tl = Some(tl.direction);
    let Some(zc) = frame.zc else {
        return Ok(frame);
    };
    let ip = intersect_semiline_circle(tl.anchor, tl.direction, zc.center, zc.radius);
    frame.intersections = ip;
    let project = |i: Option<ComplexPoint>| -> Option<(ComplexPoint, ComplexPoint, Option<f64>)> {
        let (i0, c0) = lf.projections(i?, &tl).ok()?;
        Some((i0, c0, weighted_error(lf.p1, lf.v, i0, c0).ok()))
    };
    if let Some((i0, c0, e)) = project(ip.relevant_i1()) {
        frame.proj_i0.0 = Some(i0);
        frame.proj_c0.0 = Some(c0);
        frame.e_a = e;
    }
    if let Some((i0, c0, e)) = project(ip.relevant_i2()) {
        frame.proj_i0.1 = Some(i0);
        frame.proj_c0.1 = Some(c0);
        frame.e_b = e;
    }
    if ip.relevance == 0 {
        frame.reason = Some("terminal semi-line misses the z-circumference".into());
    }
    Ok(frame)
}
