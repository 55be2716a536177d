//! Discrete proximity maps over a θ-partition, their smooth zero crossings, and the
//! ranked root-estimate tables built from them.
//!
//! Three maps are supported: the weighted errors `e_A(θ)`, `e_B(θ)` ([`MapKind::E`]),
//! and difference quotients of `d²_θ(t*(θ))` ([`MapKind::DD2`]) and of `t*(θ)`
//! ([`MapKind::DT`]). Every θ of a sweep is independent, so sweeps run on a rayon pool
//! and give identical results for any worker count.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use tracing::warn;

use crate::dsd_optimizer::{minimize_line, MinStatus, OptimizerConfig};
use crate::error::{LcError, Result};
use crate::lzc_engine::{build_frame, build_frame_with, solve_quadratic, LineFrame, QuadraticSolution};
use crate::polynomial::MonicPolynomial;
use crate::ser;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapKind {
    E,
    DD2,
    DT,
}

impl MapKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MapKind::E => "e",
            MapKind::DD2 => "dd2",
            MapKind::DT => "dt",
        }
    }

    fn stream_base(self) -> u64 {
        // Re-optimizations at crossings draw from streams disjoint from the sweep.
        (1u64 << 48)
            + match self {
                MapKind::E => 0,
                MapKind::DD2 => 1 << 40,
                MapKind::DT => 2 << 40,
            }
    }
}

impl FromStr for MapKind {
    type Err = LcError;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "e" => Ok(MapKind::E),
            "dd2" => Ok(MapKind::DD2),
            "dt" => Ok(MapKind::DT),
            other => Err(LcError::Config(format!("unknown map kind '{other}' (e|dd2|dt)"))),
        }
    }
}

/// Regular partition `θ_k = from + (to − from) k / N`, `k = 0..N−1`, of `[from, to)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PartitionSpec {
    pub from: f64,
    pub to: f64,
    pub count: usize,
    /// `[−π, π)`: the map is periodic and crossings may wrap around.
    pub is_global: bool,
}

impl PartitionSpec {
    pub fn global(count: usize) -> Result<Self> {
        Self::new(-PI, PI, count)
    }

    pub fn new(from: f64, to: f64, count: usize) -> Result<Self> {
        if count < 2 {
            return Err(LcError::Partition("N must be at least 2".into()));
        }
        if !from.is_finite() || !to.is_finite() || !(from < to) {
            return Err(LcError::Partition(format!(
                "interval [{from}, {to}) must be finite and non-empty"
            )));
        }
        Ok(PartitionSpec {
            from,
            to,
            count,
            is_global: from == -PI && to == PI,
        })
    }

    pub fn theta(&self, k: usize) -> f64 {
        self.from + (self.to - self.from) * k as f64 / self.count as f64
    }

    pub fn thetas(&self) -> Vec<f64> {
        (0..self.count).map(|k| self.theta(k)).collect()
    }

    /// `θ_1 − θ_0`.
    pub fn delta(&self) -> f64 {
        self.theta(1) - self.theta(0)
    }
}

/// Which weighted-error branch a crossing came from (`A` also labels derivative maps).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Crossing {
    pub theta_hat: f64,
    pub delta: f64,
    pub branch: Branch,
}

/// Run of undefined map values whose flanks suggest a hidden crossing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapInterval {
    pub from: f64,
    pub to: f64,
    pub branch: Branch,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProximityMap {
    pub kind: MapKind,
    pub partition: PartitionSpec,
    pub support: Vec<f64>,
    pub values_a: Vec<Option<f64>>,
    /// `e_B` for [`MapKind::E`]; empty otherwise.
    pub values_b: Vec<Option<f64>>,
    pub aux_min_f: Vec<Option<f64>>,
    pub aux_min_t: Vec<Option<f64>>,
    #[serde(serialize_with = "ser::vec_opt_complex")]
    pub aux_rx: Vec<Option<Complex64>>,
    #[serde(serialize_with = "ser::vec_opt_complex")]
    pub aux_ap: Vec<Option<Complex64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EstimateRow {
    #[serde(serialize_with = "ser::complex")]
    pub rx: Complex64,
    pub theta_hat: f64,
    /// `|Δe|`, or the jump of the derivative map at the crossing.
    pub delta_quality: f64,
    /// `d²_θ̂(t*(θ̂))`; absent for cubics.
    pub d2_quality: Option<f64>,
}

/// Smooth crossings of a sampled function with `y = 0`.
///
/// Adjacent defined samples with `e_i e_(i+1) ≤ 0` and `|e_i − e_(i+1)| ≤ tol` give
/// `θ̂ = θ_i + e_i (θ_(i+1) − θ_i)/(e_i − e_(i+1))` and `delta = |e_i − e_(i+1)|`.
pub fn find_crossings(support: &[f64], values: &[Option<f64>], tol: f64) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for i in 0..support.len().min(values.len()).saturating_sub(1) {
        let (Some(e1), Some(e2)) = (values[i], values[i + 1]) else {
            continue;
        };
        if e1 * e2 > 0.0 || e1 == e2 {
            continue;
        }
        let de = (e1 - e2).abs();
        if de > tol {
            continue;
        }
        let (t1, t2) = (support[i], support[i + 1]);
        out.push((t1 + e1 * (t2 - t1) / (e1 - e2), de));
    }
    out
}

pub(crate) fn par_map<T, F>(n: usize, workers: Option<usize>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match workers {
        Some(w) => match rayon::ThreadPoolBuilder::new().num_threads(w.max(1)).build() {
            Ok(pool) => pool.install(|| (0..n).into_par_iter().map(&f).collect()),
            Err(_) => (0..n).map(&f).collect(),
        },
        None => (0..n).into_par_iter().map(f).collect(),
    }
}

/// Weighted-error map. Cubics need no optimizer; for degree ≥ 4 every θ_k first gets
/// `t*(θ_k)` from the optimizer (random stream `k`).
pub fn build_e_map(
    p: &MonicPolynomial,
    part: &PartitionSpec,
    opt: &OptimizerConfig,
    workers: Option<usize>,
) -> Result<ProximityMap> {
    if p.degree() < 3 {
        return Err(LcError::Degree {
            degree: p.degree(),
            hint: "proximity maps need degree >= 3",
        });
    }
    opt.validate()?;
    let n = p.degree();
    let rows = par_map(part.count, workers, |k| {
        let theta = part.theta(k);
        let lf = LineFrame::new(p, theta);
        let (t_star, min_f) = if n >= 4 {
            let m = minimize_line(p, &lf, k as u64, opt);
            (m.t_star, m.min_value)
        } else {
            (None, None)
        };
        let frame = build_frame_with(p, &lf, theta, t_star).ok();
        let (ea, eb, rx, ap) = frame.map(|f| (f.e_a, f.e_b, f.rx, f.anchor_point)).unwrap_or_default();
        (ea, eb, min_f, t_star, rx, ap)
    });
    let mut map = ProximityMap {
        kind: MapKind::E,
        partition: *part,
        support: part.thetas(),
        values_a: Vec::with_capacity(part.count),
        values_b: Vec::with_capacity(part.count),
        aux_min_f: Vec::with_capacity(part.count),
        aux_min_t: Vec::with_capacity(part.count),
        aux_rx: Vec::with_capacity(part.count),
        aux_ap: Vec::with_capacity(part.count),
    };
    for (ea, eb, mf, mt, rx, ap) in rows {
        map.values_a.push(ea);
        map.values_b.push(eb);
        map.aux_min_f.push(mf);
        map.aux_min_t.push(mt);
        map.aux_rx.push(rx);
        map.aux_ap.push(if n >= 4 { ap } else { None });
    }
    Ok(map)
}

/// Difference-quotient map of `source` (MinF for DD2, MinT for DT) with crossings
/// re-optimized into a table sorted by d²-quality.
///
/// Quotients `(s_j − s_(j−1))/Δθ` live at `θ_j − Δθ/2`. Global maps also carry the
/// wraparound quotient `(s_0 − s_(N−1))/Δθ` at `θ_0 − Δθ/2`; regional maps drop it.
pub fn build_derivative_map(
    p: &MonicPolynomial,
    kind: MapKind,
    source: &[Option<f64>],
    part: &PartitionSpec,
    tol: f64,
    opt: &OptimizerConfig,
    workers: Option<usize>,
) -> Result<(ProximityMap, Vec<EstimateRow>)> {
    if kind == MapKind::E {
        return Err(LcError::Config("derivative maps are DD2 or DT".into()));
    }
    if source.len() != part.count {
        return Err(LcError::Partition(format!(
            "source has {} values but the partition has {}",
            source.len(),
            part.count
        )));
    }
    if !(tol > 0.0) {
        return Err(LcError::Config(format!("{} maps need a positive tol", kind.as_str())));
    }
    let n = part.count;
    let dtheta = part.delta();
    let quotient = |a: Option<f64>, b: Option<f64>| Some((a? - b?) / dtheta);
    let mut support = Vec::with_capacity(n);
    let mut values = Vec::with_capacity(n);
    if part.is_global {
        support.push(part.theta(0) - dtheta / 2.0);
        values.push(quotient(source[0], source[n - 1]));
    }
    for j in 1..n {
        support.push(part.theta(j) - dtheta / 2.0);
        values.push(quotient(source[j], source[j - 1]));
    }
    let crossings = find_crossings(&support, &values, tol);
    let rows = estimate_roots_general(p, &crossings, opt, kind.stream_base(), workers)?;
    let len = values.len();
    let map = ProximityMap {
        kind,
        partition: *part,
        support,
        values_a: values,
        values_b: Vec::new(),
        aux_min_f: vec![None; len],
        aux_min_t: vec![None; len],
        aux_rx: vec![None; len],
        aux_ap: vec![None; len],
    };
    Ok((map, rows))
}

/// Crossings of a map: for E maps `e_A` then `e_B`, each closed with the θ = π copy of
/// its first value when the map is global.
pub fn map_crossings(map: &ProximityMap, tol: f64) -> Vec<Crossing> {
    let mut out = Vec::new();
    let mut series = vec![(Branch::A, &map.values_a)];
    if map.kind == MapKind::E {
        series.push((Branch::B, &map.values_b));
    }
    for (branch, vals) in series {
        let found = if map.kind == MapKind::E && map.partition.is_global {
            let mut sup = map.support.clone();
            sup.push(PI);
            let mut v = vals.clone();
            v.push(vals[0]);
            find_crossings(&sup, &v, tol)
        } else {
            find_crossings(&map.support, vals, tol)
        };
        out.extend(found.into_iter().map(|(theta_hat, delta)| Crossing {
            theta_hat,
            delta,
            branch,
        }));
    }
    out
}

/// Undefined stretches of each series whose flanking values change sign, or whose flank
/// has `e_A` and `e_B` on opposite sides of zero. These are candidates for a regional
/// re-sweep.
pub fn gap_intervals(map: &ProximityMap) -> Vec<GapInterval> {
    let mut out = Vec::new();
    let n = map.support.len();
    let mut series = vec![(Branch::A, &map.values_a, &map.values_b)];
    if map.kind == MapKind::E {
        series.push((Branch::B, &map.values_b, &map.values_a));
    }
    let cyclic = map.partition.is_global;
    for (branch, vals, other) in series {
        if n == 0 || vals.iter().all(Option::is_none) {
            continue;
        }
        let straddles = |i: usize| match (vals[i], other.get(i).copied().flatten()) {
            (Some(a), Some(b)) => a * b < 0.0,
            _ => false,
        };
        let mut k = 0;
        while k < n {
            if vals[k].is_some() {
                k += 1;
                continue;
            }
            let start = k;
            while k < n && vals[k].is_none() {
                k += 1;
            }
            let end = k; // one past the run
            let left = if start > 0 {
                Some(start - 1)
            } else if cyclic {
                (0..n).rev().find(|&i| vals[i].is_some())
            } else {
                None
            };
            let right = if end < n {
                Some(end)
            } else if cyclic {
                (0..n).find(|&i| vals[i].is_some())
            } else {
                None
            };
            let (Some(l), Some(r)) = (left, right) else {
                continue;
            };
            let (Some(vl), Some(vr)) = (vals[l], vals[r]) else {
                continue;
            };
            if vl * vr < 0.0 || straddles(l) || straddles(r) {
                out.push(GapInterval {
                    from: map.support[l],
                    to: map.support[r],
                    branch,
                });
            }
        }
    }
    out
}

/// Rescue for cubic global maps with fewer than three crossings: the partition point
/// minimizing `|e_A − e_B|` among points where `e_A e_B < 0`, turned into an estimate
/// with the cubic rule at that frame. `delta_quality` is the minimal gap.
pub fn rescue_missing_root(p: &MonicPolynomial, map: &ProximityMap) -> Option<EstimateRow> {
    if map.kind != MapKind::E || p.degree() != 3 {
        return None;
    }
    let mut best: Option<(usize, f64)> = None;
    for k in 0..map.support.len() {
        if let (Some(a), Some(b)) = (map.values_a[k], map.values_b[k]) {
            if a * b < 0.0 {
                let d = (a - b).abs();
                if best.is_none_or(|(_, bd)| d < bd) {
                    best = Some((k, d));
                }
            }
        }
    }
    let (k, d) = best?;
    let theta = map.support[k];
    let frame = build_frame(p, theta, None).ok()?;
    Some(EstimateRow {
        rx: frame.cubic_estimate()?,
        theta_hat: theta,
        delta_quality: d,
        d2_quality: None,
    })
}

/// Cubic estimates at `(θ̂, delta)` pairs, sorted by `delta`. Frames without a relevant
/// intersection are dropped.
pub fn estimate_roots_cubic(p: &MonicPolynomial, crossings: &[(f64, f64)]) -> Result<Vec<EstimateRow>> {
    if p.degree() != 3 {
        return Err(LcError::Degree {
            degree: p.degree(),
            hint: "the cubic estimate rule needs degree 3",
        });
    }
    let mut rows = Vec::with_capacity(crossings.len());
    for &(theta, delta) in crossings {
        match build_frame(p, theta, None).ok().and_then(|f| f.cubic_estimate()) {
            Some(rx) => rows.push(EstimateRow {
                rx,
                theta_hat: theta,
                delta_quality: delta,
                d2_quality: None,
            }),
            None => warn!(theta, "no relevant intersection at crossing; row dropped"),
        }
    }
    rows.sort_by(|a, b| a.delta_quality.total_cmp(&b.delta_quality));
    Ok(rows)
}

/// Estimates `Rx = P1 + t*(θ̂) v(θ̂)` at each crossing, sorted by `d²_θ̂(t*)`. Crossings
/// whose minimizer is rejected are dropped.
pub fn estimate_roots_general(
    p: &MonicPolynomial,
    crossings: &[(f64, f64)],
    opt: &OptimizerConfig,
    stream_base: u64,
    workers: Option<usize>,
) -> Result<Vec<EstimateRow>> {
    if p.degree() < 4 {
        return Err(LcError::Degree {
            degree: p.degree(),
            hint: "the general estimate rule needs degree >= 4",
        });
    }
    opt.validate()?;
    let found = par_map(crossings.len(), workers, |i| {
        let (theta, delta) = crossings[i];
        let lf = LineFrame::new(p, theta);
        let m = minimize_line(p, &lf, stream_base + i as u64, opt);
        (theta, delta, m)
    });
    let mut rows = Vec::with_capacity(found.len());
    for (theta, delta, m) in found {
        match (m.status, m.t_star, m.min_value) {
            (MinStatus::Ok, Some(t), Some(v)) => rows.push(EstimateRow {
                rx: p.p1() + crate::complex_geometry::unit(theta) * t,
                theta_hat: theta,
                delta_quality: delta,
                d2_quality: Some(v),
            }),
            (status, ..) => warn!(theta, ?status, "minimizer rejected at crossing; row dropped"),
        }
    }
    rows.sort_by(|a, b| {
        let x = a.d2_quality.unwrap_or(f64::INFINITY);
        let y = b.d2_quality.unwrap_or(f64::INFINITY);
        x.total_cmp(&y)
    });
    Ok(rows)
}

/// Merges rows closer than `Δθ/2` in θ̂ and `1e-6` in `rx`, keeping the better one.
pub fn dedup_rows(rows: &[EstimateRow], dtheta: f64) -> Vec<EstimateRow> {
    let mut out: Vec<EstimateRow> = Vec::with_capacity(rows.len());
    for r in rows {
        let dup = out
            .iter_mut()
            .find(|o| (o.theta_hat - r.theta_hat).abs() < dtheta / 2.0 && (o.rx - r.rx).norm() < 1e-6);
        match dup {
            Some(o) => {
                let key = |x: &EstimateRow| x.d2_quality.unwrap_or(x.delta_quality);
                if key(r) < key(o) {
                    *o = *r;
                }
            }
            None => out.push(*r),
        }
    }
    out
}

/// One map with its crossings, estimate table and gap report.
#[derive(Debug, Clone, Serialize)]
pub struct MapReport {
    pub map: ProximityMap,
    pub tol: f64,
    pub crossings: Vec<Crossing>,
    pub table: Vec<EstimateRow>,
    pub gaps: Vec<GapInterval>,
    /// Row added by the cubic rescue routine, also present in `table`.
    pub rescued: Option<EstimateRow>,
}

/// Which maps to build and their crossing tolerances.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MapPlan {
    pub kinds: Vec<MapKind>,
    pub tol_e: f64,
    pub tol_dd2: Option<f64>,
    pub tol_dt: Option<f64>,
    pub dedup: bool,
}

impl Default for MapPlan {
    fn default() -> Self {
        MapPlan {
            kinds: vec![MapKind::E],
            tol_e: 1.0,
            tol_dd2: None,
            tol_dt: None,
            dedup: false,
        }
    }
}

impl MapPlan {
    /// Plan from optional user choices. Without explicit kinds the E map is built plus every
    /// derivative map that has a tol; explicit derivative kinds must come with their tol.
    pub fn resolve(
        kinds: Option<Vec<MapKind>>,
        tol_e: Option<f64>,
        tol_dd2: Option<f64>,
        tol_dt: Option<f64>,
        dedup: bool,
    ) -> Result<Self> {
        for t in [tol_e, tol_dd2, tol_dt].into_iter().flatten() {
            if !(t > 0.0) {
                return Err(LcError::Config(format!("tol must be positive, got {t}")));
            }
        }
        let kinds = match kinds {
            Some(k) if k.is_empty() => return Err(LcError::Config("no map kinds requested".into())),
            Some(mut k) => {
                k.dedup();
                if k.contains(&MapKind::DD2) && tol_dd2.is_none() {
                    return Err(LcError::Config("the dd2 map needs --tol-dd2".into()));
                }
                if k.contains(&MapKind::DT) && tol_dt.is_none() {
                    return Err(LcError::Config("the dt map needs --tol-dt".into()));
                }
                k
            }
            None => {
                let mut k = vec![MapKind::E];
                if tol_dd2.is_some() {
                    k.push(MapKind::DD2);
                }
                if tol_dt.is_some() {
                    k.push(MapKind::DT);
                }
                k
            }
        };
        Ok(MapPlan {
            kinds,
            tol_e: tol_e.unwrap_or(1.0),
            tol_dd2,
            tol_dt,
            dedup,
        })
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SolveReport {
    pub e: Option<MapReport>,
    pub dd2: Option<MapReport>,
    pub dt: Option<MapReport>,
}

impl SolveReport {
    pub fn reports(&self) -> impl Iterator<Item = &MapReport> {
        [&self.e, &self.dd2, &self.dt].into_iter().flatten()
    }
}

/// Cubic strategy: e-map, crossings, the rescue routine for global maps with fewer than
/// three crossings, and a table sorted by `|Δe|`.
pub fn solve_cubic(p: &MonicPolynomial, part: &PartitionSpec, tol: f64, workers: Option<usize>) -> Result<MapReport> {
    if p.degree() != 3 {
        return Err(LcError::Degree {
            degree: p.degree(),
            hint: "solve_cubic needs degree 3",
        });
    }
    let map = build_e_map(p, part, &OptimizerConfig::default(), workers)?;
    let crossings = map_crossings(&map, tol);
    let pairs: Vec<(f64, f64)> = crossings.iter().map(|c| (c.theta_hat, c.delta)).collect();
    let mut table = estimate_roots_cubic(p, &pairs)?;
    let rescued = if part.is_global && crossings.len() < 3 {
        rescue_missing_root(p, &map)
    } else {
        None
    };
    if let Some(r) = rescued {
        table.push(r);
        table.sort_by(|a, b| a.delta_quality.total_cmp(&b.delta_quality));
    }
    let gaps = gap_intervals(&map);
    Ok(MapReport {
        map,
        tol,
        crossings,
        table,
        gaps,
        rescued,
    })
}

/// Strategies for degree ≥ 4: one sweep provides the e-map and the MinF/MinT series the
/// derivative maps are built from.
pub fn solve_general(
    p: &MonicPolynomial,
    part: &PartitionSpec,
    opt: &OptimizerConfig,
    plan: &MapPlan,
    workers: Option<usize>,
) -> Result<SolveReport> {
    if p.degree() < 4 {
        return Err(LcError::Degree {
            degree: p.degree(),
            hint: "solve_general needs degree >= 4",
        });
    }
    let tol_for = |kind: MapKind| -> Result<f64> {
        match kind {
            MapKind::E => Ok(plan.tol_e),
            MapKind::DD2 => plan
                .tol_dd2
                .ok_or_else(|| LcError::Config("the dd2 map needs an explicit tol".into())),
            MapKind::DT => plan
                .tol_dt
                .ok_or_else(|| LcError::Config("the dt map needs an explicit tol".into())),
        }
    };
    for &k in &plan.kinds {
        tol_for(k)?;
    }
    let e_map = build_e_map(p, part, opt, workers)?;
    let dedup = |rows: Vec<EstimateRow>| {
        if plan.dedup {
            dedup_rows(&rows, part.delta())
        } else {
            rows
        }
    };
    let mut report = SolveReport::default();
    for &kind in &plan.kinds {
        let tol = tol_for(kind)?;
        let mr = match kind {
            MapKind::E => {
                let crossings = map_crossings(&e_map, tol);
                let pairs: Vec<(f64, f64)> = crossings.iter().map(|c| (c.theta_hat, c.delta)).collect();
                let table = estimate_roots_general(p, &pairs, opt, kind.stream_base(), workers)?;
                MapReport {
                    gaps: gap_intervals(&e_map),
                    map: e_map.clone(),
                    tol,
                    crossings,
                    table: dedup(table),
                    rescued: None,
                }
            }
            MapKind::DD2 | MapKind::DT => {
                let source = if kind == MapKind::DD2 {
                    &e_map.aux_min_f
                } else {
                    &e_map.aux_min_t
                };
                let (map, table) = build_derivative_map(p, kind, source, part, tol, opt, workers)?;
                MapReport {
                    crossings: map_crossings(&map, tol),
                    gaps: gap_intervals(&map),
                    map,
                    tol,
                    table: dedup(table),
                    rescued: None,
                }
            }
        };
        match kind {
            MapKind::E => report.e = Some(mr),
            MapKind::DD2 => report.dd2 = Some(mr),
            MapKind::DT => report.dt = Some(mr),
        }
    }
    Ok(report)
}

/// Result of [`solve`]: the closed form for quadratics, map reports otherwise.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Solution {
    Quadratic(QuadraticSolution),
    Maps(Box<SolveReport>),
}

/// Dispatches on degree: closed form for 2, [`solve_cubic`] for 3 (E map only),
/// [`solve_general`] above.
pub fn solve(
    p: &MonicPolynomial,
    part: &PartitionSpec,
    opt: &OptimizerConfig,
    plan: &MapPlan,
    workers: Option<usize>,
) -> Result<Solution> {
    match p.degree() {
        1 => Err(LcError::Degree {
            degree: 1,
            hint: "degree >= 2 required",
        }),
        2 => Ok(Solution::Quadratic(solve_quadratic(p.c(1), p.c(2)))),
        3 => {
            if plan.kinds.iter().any(|k| *k != MapKind::E) {
                warn!("derivative maps need degree >= 4; building the e map only");
            }
            Ok(Solution::Maps(Box::new(SolveReport {
                e: Some(solve_cubic(p, part, plan.tol_e, workers)?),
                ..SolveReport::default()
            })))
        }
        _ => Ok(Solution::Maps(Box::new(solve_general(p, part, opt, plan, workers)?))),
    }
}

fn cell(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

impl ProximityMap {
    /// CSV with header `kind,theta,value_a,value_b,min_f,min_t,rx_re,rx_im,ap_re,ap_im`;
    /// undefined values are empty cells.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("kind,theta,value_a,value_b,min_f,min_t,rx_re,rx_im,ap_re,ap_im\n");
        for i in 0..self.support.len() {
            let b = self.values_b.get(i).copied().flatten();
            let rx = self.aux_rx.get(i).copied().flatten();
            let ap = self.aux_ap.get(i).copied().flatten();
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{},{},{}",
                self.kind.as_str(),
                self.support[i],
                cell(self.values_a[i]),
                cell(b),
                cell(self.aux_min_f.get(i).copied().flatten()),
                cell(self.aux_min_t.get(i).copied().flatten()),
                cell(rx.map(|z| z.re)),
                cell(rx.map(|z| z.im)),
                cell(ap.map(|z| z.re)),
                cell(ap.map(|z| z.im)),
            );
        }
        s
    }
}

/// CSV with header `rx_re,rx_im,theta_hat,delta,d2`.
pub fn estimates_to_csv(rows: &[EstimateRow]) -> String {
    let mut s = String::from("rx_re,rx_im,theta_hat,delta,d2\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            r.rx.re,
            r.rx.im,
            r.theta_hat,
            r.delta_quality,
            cell(r.d2_quality)
        );
    }
    s
}
