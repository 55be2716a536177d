//! Minimization of the dynamic squared distance d²_θ(t) over `t ≥ 0`.
//!
//! Two strategies are available. [`Method::GridDiscretize`] samples `d/dt d²_θ(t)` on a
//! regular grid, keeps the increasing zero crossings and polishes each one; it is
//! deterministic and reports every local minimizer. [`Method::TwoPhase`] runs simulated
//! annealing from `t = 1` followed by a Newton polish and reports a single minimizer.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{LcError, Result};
use crate::lzc_engine::LineFrame;
use crate::polynomial::MonicPolynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "twophase")]
    TwoPhase,
    #[serde(rename = "grid")]
    GridDiscretize,
}

impl std::str::FromStr for Method {
    type Err = LcError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "grid" | "griddiscretize" => Ok(Method::GridDiscretize),
            "twophase" | "two-phase" | "sann" => Ok(Method::TwoPhase),
            other => Err(LcError::Config(format!("unknown method '{other}' (grid|twophase)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OptimizerConfig {
    pub method: Method,
    /// Annealing evaluations (MAXIT).
    pub max_iterations: usize,
    /// Starting temperature (TEMP).
    pub initial_temperature: f64,
    /// Evaluations per temperature level (TMAX).
    pub evals_per_temperature: usize,
    pub seed: u64,
    /// Upper end of the t-grid; `None` picks [`default_grid_t_max`].
    pub grid_t_max: Option<f64>,
    pub grid_points: usize,
    pub polish_iterations: usize,
    pub polish_tolerance: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            method: Method::GridDiscretize,
            max_iterations: 500,
            initial_temperature: 10.0,
            evals_per_temperature: 200,
            seed: 2022,
            grid_t_max: None,
            grid_points: 2000,
            polish_iterations: 100,
            polish_tolerance: 1e-12,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(LcError::Config(m.to_string()));
        if self.max_iterations == 0 || self.evals_per_temperature == 0 || self.polish_iterations == 0 {
            return bad("iteration counts must be at least 1");
        }
        if self.grid_points < 2 {
            return bad("grid_points must be at least 2");
        }
        if !(self.initial_temperature > 0.0) || !(self.polish_tolerance > 0.0) {
            return bad("temperature and tolerance must be positive");
        }
        if let Some(t) = self.grid_t_max {
            if !(t > 0.0) || !t.is_finite() {
                return bad("grid_t_max must be positive and finite");
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MinStatus {
    Ok,
    RejectedNegative,
    NoConvergence,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinResult {
    pub t_star: Option<f64>,
    pub min_value: Option<f64>,
    pub status: MinStatus,
    /// Every local minimizer found, `(t, d²)`, ascending in `t`.
    pub all_minima: Vec<(f64, f64)>,
}

impl MinResult {
    fn failed(status: MinStatus) -> Self {
        MinResult {
            t_star: None,
            min_value: None,
            status,
            all_minima: Vec::new(),
        }
    }
}

/// Upper bound for `t* = |R − P1|`: `|P1|` plus the Fujiwara bound on root moduli,
/// `2 max(|C1|, |C2|^(1/2), ..., |C(n-1)|^(1/(n-1)), |Cn/2|^(1/n))`, with a 5% margin.
pub fn default_grid_t_max(p: &MonicPolynomial) -> f64 {
    let n = p.degree();
    let mut m = 0.0f64;
    for k in 1..=n {
        let c = if k == n { p.c(k).norm() / 2.0 } else { p.c(k).norm() };
        m = m.max(c.powf(1.0 / k as f64));
    }
    let bound = 1.05 * (p.p1().norm() + 2.0 * m);
    if bound > 0.0 {
        bound
    } else {
        1.0
    }
}

/// Step used for finite differences in t.
#[inline]
fn fd_step(t: f64) -> f64 {
    1e-6f64.max(1e-6 * t.abs())
}

/// Central difference `(d²(t+h) − d²(t−h)) / 2h` with `h = max(1e-6, 1e-6|t|)`.
pub fn dsd_derivative(p: &MonicPolynomial, theta: f64, t: f64) -> Result<f64> {
    if p.degree() < 4 {
        return Err(LcError::Degree {
            degree: p.degree(),
            hint: "the dynamic squared distance needs degree >= 4",
        });
    }
    derivative(&LineFrame::new(p, theta), t)
}

#[inline]
fn derivative(lf: &LineFrame, t: f64) -> Result<f64> {
    let h = fd_step(t);
    Ok((lf.dsd(t + h)? - lf.dsd(t - h)?) / (2.0 * h))
}

#[inline]
fn second_derivative(lf: &LineFrame, t: f64) -> Result<f64> {
    let h = 1e-4f64.max(1e-4 * t.abs());
    Ok((lf.dsd(t + h)? - 2.0 * lf.dsd(t)? + lf.dsd(t - h)?) / (h * h))
}

/// Deterministic per-index seed derived from the base seed (splitmix64 finalizer).
pub fn stream_seed(seed: u64, index: u64) -> u64 {
    fn mix(mut z: u64) -> u64 {
        z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    mix(seed ^ mix(index))
}

/// Minimizes d²_θ(t) subject to `t ≥ 0` with stream index 0.
pub fn minimize_dsd(p: &MonicPolynomial, theta: f64, cfg: &OptimizerConfig) -> Result<MinResult> {
    minimize_dsd_at(p, theta, 0, cfg)
}

/// Minimizes d²_θ(t); `index` selects the random stream so sweeps do not depend on
/// scheduling.
pub fn minimize_dsd_at(p: &MonicPolynomial, theta: f64, index: u64, cfg: &OptimizerConfig) -> Result<MinResult> {
    if p.degree() < 4 {
        return Err(LcError::Degree {
            degree: p.degree(),
            hint: "the dynamic squared distance needs degree >= 4",
        });
    }
    cfg.validate()?;
    let lf = LineFrame::new(p, theta);
    Ok(match cfg.method {
        Method::GridDiscretize => {
            let t_max = cfg.grid_t_max.unwrap_or_else(|| default_grid_t_max(p));
            grid_minimize(&lf, t_max, cfg)
        }
        Method::TwoPhase => two_phase(&lf, stream_seed(cfg.seed, index), cfg),
    })
}

pub(crate) fn minimize_line(p: &MonicPolynomial, lf: &LineFrame, index: u64, cfg: &OptimizerConfig) -> MinResult {
    match cfg.method {
        Method::GridDiscretize => {
            let t_max = cfg.grid_t_max.unwrap_or_else(|| default_grid_t_max(p));
            grid_minimize(lf, t_max, cfg)
        }
        Method::TwoPhase => two_phase(lf, stream_seed(cfg.seed, index), cfg),
    }
}

fn grid_minimize(lf: &LineFrame, t_max: f64, cfg: &OptimizerConfig) -> MinResult {
    let m = cfg.grid_points;
    let ts: Vec<f64> = (0..m).map(|j| t_max * j as f64 / (m - 1) as f64).collect();
    let gs: Vec<Option<f64>> = ts.iter().map(|&t| derivative(lf, t).ok()).collect();
    let mut minima = Vec::new();
    let mut any_failed = false;
    for j in 0..m - 1 {
        let (Some(g0), Some(g1)) = (gs[j], gs[j + 1]) else {
            continue;
        };
        if !(g0 < 0.0 && g1 >= 0.0) {
            continue;
        }
        let t0 = ts[j] + g0 * (ts[j + 1] - ts[j]) / (g0 - g1);
        match polish_bracketed(lf, ts[j], ts[j + 1], t0, cfg) {
            Some(t) => {
                if let Ok(v) = lf.dsd(t) {
                    minima.push((t, v));
                }
            }
            None => any_failed = true,
        }
    }
    let best = minima
        .iter()
        .copied()
        .fold(None, |acc: Option<(f64, f64)>, c| match acc {
            Some(a) if a.1 <= c.1 => Some(a),
            _ => Some(c),
        });
    match best {
        Some((t, v)) => MinResult {
            t_star: Some(t),
            min_value: Some(v),
            status: MinStatus::Ok,
            all_minima: minima,
        },
        None if any_failed => MinResult::failed(MinStatus::NoConvergence),
        // Increasing from t = 0 on: the unconstrained minimizer lies at negative t.
        None if gs[0].is_some_and(|g| g >= 0.0) => MinResult::failed(MinStatus::RejectedNegative),
        None => MinResult::failed(MinStatus::NoConvergence),
    }
}

/// Safeguarded Newton on `d/dt d²` inside `[lo, hi]`, where the derivative goes from
/// negative to non-negative.
fn polish_bracketed(lf: &LineFrame, mut lo: f64, mut hi: f64, t0: f64, cfg: &OptimizerConfig) -> Option<f64> {
    let mut t = t0.clamp(lo, hi);
    for _ in 0..cfg.polish_iterations {
        let g = derivative(lf, t).ok()?;
        if g == 0.0 {
            return Some(t);
        }
        if g < 0.0 {
            lo = t;
        } else {
            hi = t;
        }
        let newton = second_derivative(lf, t)
            .ok()
            .filter(|g2| *g2 > 0.0)
            .map(|g2| t - g / g2)
            .filter(|x| *x > lo && *x < hi);
        let next = newton.unwrap_or(0.5 * (lo + hi));
        let scale = cfg.polish_tolerance * (1.0 + t.abs());
        if (next - t).abs() <= scale || hi - lo <= scale {
            return Some(next);
        }
        t = next;
    }
    None
}

fn two_phase(lf: &LineFrame, seed: u64, cfg: &OptimizerConfig) -> MinResult {
    let f = |t: f64| lf.dsd(t).unwrap_or(f64::INFINITY);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = 1.0;
    let mut fx = f(x);
    let (mut best_x, mut best_f) = (x, fx);
    let stages = cfg.max_iterations.div_ceil(cfg.evals_per_temperature);
    let cooling = if stages > 1 {
        1e-3f64.powf(1.0 / (stages - 1) as f64)
    } else {
        1.0
    };
    let mut temp = cfg.initial_temperature;
    let mut evals = 0;
    'outer: for _ in 0..stages {
        for _ in 0..cfg.evals_per_temperature {
            if evals >= cfg.max_iterations {
                break 'outer;
            }
            evals += 1;
            let step: f64 = rng.sample(StandardNormal);
            let y = x + temp * step;
            let fy = f(y);
            let accept = fy <= fx || {
                let u: f64 = rng.random();
                u < (-(fy - fx) / temp).exp()
            };
            if accept {
                x = y;
                fx = fy;
                if fx < best_f {
                    best_x = x;
                    best_f = fx;
                }
            }
        }
        temp *= cooling;
    }
    match polish_free(lf, best_x, cfg) {
        Some(t) if t >= 0.0 => match lf.dsd(t) {
            Ok(v) => MinResult {
                t_star: Some(t),
                min_value: Some(v),
                status: MinStatus::Ok,
                all_minima: vec![(t, v)],
            },
            Err(_) => MinResult::failed(MinStatus::NoConvergence),
        },
        Some(_) => MinResult::failed(MinStatus::RejectedNegative),
        None => MinResult::failed(MinStatus::NoConvergence),
    }
}

/// Damped Newton on `d/dt d²` with a backtracking line search on d² itself.
fn polish_free(lf: &LineFrame, start: f64, cfg: &OptimizerConfig) -> Option<f64> {
    let f = |t: f64| lf.dsd(t).unwrap_or(f64::INFINITY);
    let mut t = start;
    let mut ft = f(t);
    if !ft.is_finite() {
        return None;
    }
    for _ in 0..cfg.polish_iterations {
        let g = derivative(lf, t).ok()?;
        if g == 0.0 {
            return Some(t);
        }
        let step = match second_derivative(lf, t) {
            Ok(g2) if g2 > 0.0 => -g / g2,
            _ => -g.signum() * (1e-3f64).max(1e-3 * t.abs()),
        };
        let mut lambda = 1.0;
        let mut next = t + step;
        let mut fnext = f(next);
        while fnext > ft && lambda > 1e-10 {
            lambda *= 0.5;
            next = t + lambda * step;
            fnext = f(next);
        }
        let scale = cfg.polish_tolerance * (1.0 + t.abs());
        if (next - t).abs() <= scale {
            return Some(if fnext <= ft { next } else { t });
        }
        if fnext > ft {
            // No descent along the Newton direction: t is a minimizer to working precision.
            return Some(t);
        }
        t = next;
        ft = fnext;
    }
    None
}

/// `(t, d²_θ(t))` samples on `[0, t_max]`, used for plotting.
pub fn sample_dsd(p: &MonicPolynomial, theta: f64, t_max: f64, count: usize) -> Result<Vec<(f64, Option<f64>)>> {
    if p.degree() < 4 {
        return Err(LcError::Degree {
            degree: p.degree(),
            hint: "the dynamic squared distance needs degree >= 4",
        });
    }
    let lf = LineFrame::new(p, theta);
    let count = count.max(2);
    Ok((0..count)
        .map(|j| {
            let t = t_max * j as f64 / (count - 1) as f64;
            (t, lf.dsd(t).ok())
        })
        .collect())
}
