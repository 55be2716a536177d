//! Monic polynomials `z^n + C1 z^(n-1) + ... + Cn`: construction from roots, evaluation,
//! theta roots, variable shift, the resolvent-cubic quartic solver and a simultaneous
//! iteration root oracle.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{LcError, Result};
use crate::ser::{self, Pt};

/// Monic polynomial stored by its non-leading coefficients, `C1` first.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonicPolynomial {
    #[serde(serialize_with = "ser::vec_complex")]
    coeffs: Vec<Complex64>,
}

/// Roots together with the inclination of the line from `P1 = -C1/2` to each root.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootSet {
    #[serde(serialize_with = "ser::vec_complex")]
    pub roots: Vec<Complex64>,
    pub theta_roots: Vec<Option<f64>>,
}

impl MonicPolynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(LcError::Degree {
                degree: 0,
                hint: "a monic polynomial needs at least one coefficient",
            });
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(LcError::Parse("non-finite coefficient".into()));
        }
        Ok(MonicPolynomial { coeffs })
    }

    /// Convenience constructor from `(re, im)` pairs.
    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(re, im)| Complex64::new(re, im)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// `C1..Cn`.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// `C_k` with `C_0 = 1`.
    pub fn c(&self, k: usize) -> Complex64 {
        if k == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            self.coeffs[k - 1]
        }
    }

    /// Fixed point `P1 = -C1/2` of the lines ℓ1(θ).
    pub fn p1(&self) -> Complex64 {
        -self.coeffs[0] / 2.0
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// True when `|Cn| < 1e-300`, i.e. zero is (numerically) a root.
    pub fn has_zero_root(&self) -> bool {
        self.coeffs[self.degree() - 1].norm() < 1e-300
    }

    /// Builds the monic polynomial with the given roots by repeated multiplication by
    /// `(z - r)`.
    pub fn from_roots(roots: &[Complex64]) -> Result<Self> {
        if roots.is_empty() {
            return Err(LcError::EmptyRoots);
        }
        let mut c = vec![Complex64::new(1.0, 0.0)];
        for &r in roots {
            c.push(Complex64::new(0.0, 0.0));
            for k in (1..c.len()).rev() {
                let prev = c[k - 1];
                c[k] -= r * prev;
            }
        }
        c.remove(0);
        Self::new(c)
    }

    /// Horner evaluation.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().fold(Complex64::new(1.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value and first derivative at `z`.
    pub fn evaluate_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::new(1.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in &self.coeffs {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// Inclination in [−π, π) of the line from `P1` through `root`.
    pub fn theta_root(&self, root: Complex64) -> Result<f64> {
        let w = root - self.p1();
        if w.norm() == 0.0 {
            return Err(LcError::RootAtFixedPoint);
        }
        Ok(wrap_angle(w.im.atan2(w.re)))
    }

    /// Coefficients of `p(z - a)`, whose roots are the roots of `p` moved by `a`.
    pub fn shift_variable(&self, a: Complex64) -> MonicPolynomial {
        let n = self.degree();
        let neg_a = -a;
        let mut out = Vec::with_capacity(n);
        for k in 1..=n {
            let mut d = Complex64::new(0.0, 0.0);
            let mut pow = Complex64::new(1.0, 0.0);
            for i in 0..=k {
                d += binomial(n - k + i, i) * pow * self.c(k - i);
                pow *= neg_a;
            }
            out.push(d);
        }
        MonicPolynomial { coeffs: out }
    }

    /// Resolvent cubic `x³ - C2 x² + (C1C3 - 4C4) x + (4C2C4 - C1²C4 - C3²)` of a quartic.
    pub fn resolvent_cubic(&self) -> Result<MonicPolynomial> {
        if self.degree() != 4 {
            return Err(LcError::Degree {
                degree: self.degree(),
                hint: "the resolvent cubic needs a quartic",
            });
        }
        let (c1, c2, c3, c4) = (self.c(1), self.c(2), self.c(3), self.c(4));
        MonicPolynomial::new(vec![-c2, c1 * c3 - 4.0 * c4, 4.0 * c2 * c4 - c1 * c1 * c4 - c3 * c3])
    }

    /// All four roots of a quartic through its resolvent cubic.
    ///
    /// With `S1` a root of the resolvent, the sums of root pairs solve
    /// `x² + C1 x + (C2 - S1) = 0` and the matching products solve `x² - S1 x + C4 = 0`.
    /// Which sum goes with which product is decided by the residual of the resulting roots.
    pub fn solve_quartic_resolvent(&self) -> Result<Vec<Complex64>> {
        let q = self.resolvent_cubic()?;
        let s_roots = oracle_roots(&q)?.roots;
        let (c1, c2, c4) = (self.c(1), self.c(2), self.c(4));
        let mut best: Option<(f64, Vec<Complex64>)> = None;
        for &s1 in &s_roots {
            let (t11, t12) = quadratic_roots(c1, c2 - s1);
            let (t21, t22) = quadratic_roots(-s1, c4);
            for (pa, pb) in [((t11, t21), (t12, t22)), ((t11, t22), (t12, t21))] {
                let (r1, r2) = quadratic_roots(-pa.0, pa.1);
                let (r3, r4) = quadratic_roots(-pb.0, pb.1);
                let roots = vec![r1, r2, r3, r4];
                let res = roots.iter().map(|&r| self.evaluate(r).norm()).fold(0.0, f64::max);
                if best.as_ref().is_none_or(|(b, _)| res < *b) {
                    best = Some((res, roots));
                }
            }
            // The first pairing that already reproduces the quartic is accepted as is.
            if let Some((b, _)) = &best {
                if *b <= 1e-12 * (1.0 + self.max_coeff_norm()) {
                    break;
                }
            }
        }
        Ok(best.map(|(_, r)| r).unwrap_or_default())
    }
}

impl fmt::Display for MonicPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        write!(f, "z^{n}")?;
        for (k, c) in self.coeffs.iter().enumerate() {
            let pow = n - k - 1;
            write!(f, " + ({})", format_complex(*c))?;
            match pow {
                0 => {}
                1 => write!(f, "z")?,
                _ => write!(f, "z^{pow}")?,
            }
        }
        Ok(())
    }
}

/// Formats `a+bi` with 10 significant decimals.
pub fn format_complex(z: Complex64) -> String {
    let sign = if z.im < 0.0 || (z.im == 0.0 && z.im.is_sign_negative()) {
        '-'
    } else {
        '+'
    };
    format!("{:.10}{}{:.10}i", z.re, sign, z.im.abs())
}

/// Maps an angle from atan2's (−π, π] onto [−π, π).
pub fn wrap_angle(theta: f64) -> f64 {
    if theta >= PI {
        theta - 2.0 * PI
    } else {
        theta
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    let mut b = 1.0;
    for i in 0..k {
        b = b * (n - i) as f64 / (i + 1) as f64;
    }
    b.round()
}

/// Roots of `x² + b x + c`, computed without cancellation.
pub fn quadratic_roots(b: Complex64, c: Complex64) -> (Complex64, Complex64) {
    let s = (b * b - 4.0 * c).sqrt();
    let q = if (b.conj() * s).re >= 0.0 {
        -(b + s) / 2.0
    } else {
        -(b - s) / 2.0
    };
    if q.norm() == 0.0 {
        return (q, q);
    }
    (q, c / q)
}

const ORACLE_MAX_ITER: usize = 2000;

/// All roots by Aberth–Ehrlich simultaneous iteration.
///
/// Starts are spread on the circle of radius `1 + max|Ck|` (which contains every root)
/// with a fixed irrational angular offset, so results are deterministic. The result is
/// accepted when every residual satisfies `|p(r)| ≤ 1e-10 (1 + max|Ck|)`.
pub fn oracle_roots(p: &MonicPolynomial) -> Result<RootSet> {
    let n = p.degree();
    let bound = 1e-10 * (1.0 + p.max_coeff_norm());
    let radius = 1.0 + p.max_coeff_norm();
    let offset = 0.5 * (5f64.sqrt() - 1.0);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / n as f64 + offset))
        .collect();
    let mut converged = false;
    for _ in 0..ORACLE_MAX_ITER {
        let mut max_rel = 0.0f64;
        for i in 0..n {
            let (pv, dp) = p.evaluate_with_derivative(z[i]);
            if pv.norm() == 0.0 {
                continue;
            }
            let ratio = pv / dp;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    s += (z[i] - z[j]).inv();
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.re.is_finite() && w.im.is_finite() {
                z[i] -= w;
                max_rel = max_rel.max(w.norm() / (1.0 + z[i].norm()));
            }
        }
        if max_rel < 1e-15 {
            converged = true;
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (pv, dp) = p.evaluate_with_derivative(*zi);
            if dp.norm() == 0.0 {
                break;
            }
            let cand = *zi - pv / dp;
            if p.evaluate(cand).norm() < pv.norm() {
                *zi = cand;
            } else {
                break;
            }
        }
    }
    let residual_ok = z.iter().all(|&r| p.evaluate(r).norm() <= bound);
    if !residual_ok {
        return Err(LcError::NoConvergence {
            iterations: if converged { 0 } else { ORACLE_MAX_ITER },
            best: z,
        });
    }
    let theta_roots = z.iter().map(|&r| p.theta_root(r).ok()).collect();
    Ok(RootSet { roots: z, theta_roots })
}

/// Parses coefficients, `C1` first. Accepted forms:
///
/// * a JSON array of `{"re": .., "im": ..}` objects;
/// * one coefficient per line, either `re im` or a literal such as `1+2i`;
/// * a comma separated list of the same (`"1 1, 2 2"` or `"1+i, 2+2i"`).
///
/// Blank lines and `#` comments are ignored.
pub fn parse_coefficients(text: &str) -> Result<Vec<Complex64>> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(LcError::Parse("no coefficients given".into()));
    }
    if trimmed.starts_with('[') {
        let pts: Vec<Pt> = serde_json::from_str(trimmed).map_err(|e| LcError::Parse(e.to_string()))?;
        return Ok(pts.into_iter().map(Complex64::from).collect());
    }
    let mut out = Vec::new();
    for line in trimmed.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        for item in line.split([',', ';']) {
            let item = item.trim();
            if !item.is_empty() {
                out.push(parse_complex(item)?);
            }
        }
    }
    if out.is_empty() {
        return Err(LcError::Parse("no coefficients given".into()));
    }
    Ok(out)
}

/// Parses an angle: a decimal, `pi`, `-pi`, or a multiple such as `pi/2` or `-2pi`.
pub fn parse_angle(s: &str) -> Result<f64> {
    let bad = || LcError::Parse(format!("cannot parse angle '{s}'"));
    let t = s.trim().to_ascii_lowercase();
    let Some(pos) = t.find("pi") else {
        return t.parse::<f64>().map_err(|_| bad());
    };
    let (head, tail) = (t[..pos].trim_end_matches('*'), &t[pos + 2..]);
    let factor = match head {
        "" | "+" => 1.0,
        "-" => -1.0,
        h => h.parse::<f64>().map_err(|_| bad())?,
    };
    let divisor = match tail {
        "" => 1.0,
        d => d
            .strip_prefix('/')
            .and_then(|d| d.parse::<f64>().ok())
            .ok_or_else(bad)?,
    };
    Ok(factor * PI / divisor)
}

/// Parses `re im`, `re`, `bi`, `a+bi`, `a-bi`, `i` or `-i` (`j` is accepted for `i`).
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = || LcError::Parse(format!("cannot parse complex number '{s}'"));
    let parts: Vec<&str> = s.split_whitespace().collect();
    if parts.len() == 2 && !parts[1].ends_with(['i', 'j']) {
        let re = parts[0].parse::<f64>().map_err(|_| bad())?;
        let im = parts[1].parse::<f64>().map_err(|_| bad())?;
        return Ok(Complex64::new(re, im));
    }
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(bad());
    }
    if !compact.ends_with(['i', 'j']) {
        return compact
            .parse::<f64>()
            .map(|re| Complex64::new(re, 0.0))
            .map_err(|_| bad());
    }
    let body = &compact[..compact.len() - 1];
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re_part, im_part) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let re = if re_part.is_empty() {
        0.0
    } else {
        re_part.parse::<f64>().map_err(|_| bad())?
    };
    let im = match im_part {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(Complex64::new(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_complex("1 2").unwrap(), c(1.0, 2.0));
        assert_eq!(parse_complex("1+2i").unwrap(), c(1.0, 2.0));
        assert_eq!(parse_complex("-1.5e-3-2i").unwrap(), c(-1.5e-3, -2.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("3").unwrap(), c(3.0, 0.0));
        assert_eq!(parse_complex("2.5i").unwrap(), c(0.0, 2.5));
        assert_eq!(parse_complex("1e2+1e-2i").unwrap(), c(100.0, 0.01));
        assert!(parse_complex("abc").is_err());
        assert_eq!(parse_coefficients("1 1, 2 2").unwrap(), vec![c(1.0, 1.0), c(2.0, 2.0)]);
        assert_eq!(
            parse_coefficients("# cubic\n1 0\n0 1\n\n-2 0\n").unwrap(),
            vec![c(1.0, 0.0), c(0.0, 1.0), c(-2.0, 0.0)]
        );
        assert_eq!(
            parse_coefficients(r#"[{"re":1,"im":-1},{"re":0,"im":2}]"#).unwrap(),
            vec![c(1.0, -1.0), c(0.0, 2.0)]
        );
        assert!(parse_coefficients("  ").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(10, 0), 1.0);
        assert_eq!(binomial(20, 10), 184756.0);
    }

    #[test]
    fn quadratic_helper() {
        let (a, b) = quadratic_roots(c(-3.0, 0.0), c(2.0, 0.0));
        let mut r = [a.re, b.re];
        r.sort_by(f64::total_cmp);
        assert_eq!(r, [1.0, 2.0]);
    }
}
