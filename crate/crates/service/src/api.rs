use std::f64::consts::PI;

use axum::body::Bytes;
use axum::extract::{Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use lc_core::complex_geometry::unit;
use lc_core::dsd_optimizer::{default_grid_t_max, minimize_dsd, sample_dsd};
use lc_core::lzc_engine::{build_frame, terminal_curve_point, QuadraticSolution};
use lc_core::polynomial::{parse_angle, parse_coefficients};
use lc_core::proximity_maps::{
    solve as solve_maps, Crossing, EstimateRow, GapInterval, MapKind, MapPlan, MapReport, PartitionSpec, Solution,
};
use lc_core::ser::Pt;
use lc_core::{LzCFrame, MinResult, MonicPolynomial, OptimizerConfig, C64};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::{ApiError, AppState, Session};

/// Points in the d² side curve and the sampled polylines.
const CURVE_POINTS: usize = 600;
const CIRCLE_POINTS: usize = 361;

type ApiResult<T> = Result<T, ApiError>;

fn session(state: &AppState, id: Option<&str>) -> ApiResult<std::sync::Arc<Session>> {
    let id = id.ok_or_else(|| ApiError::bad_request("missing 'id'"))?;
    state.get(id).ok_or_else(|| ApiError::not_found(id))
}

async fn blocking<T: Send + 'static>(f: impl FnOnce() -> ApiResult<T> + Send + 'static) -> ApiResult<T> {
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?
}

#[derive(Deserialize)]
struct PolynomialBody {
    coefficients: CoefficientInput,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CoefficientInput {
    Text(String),
    Pairs(Vec<[f64; 2]>),
    Points(Vec<Pt>),
}

fn parse_polynomial_body(body: &[u8]) -> ApiResult<Vec<C64>> {
    let text = std::str::from_utf8(body).map_err(|_| ApiError::bad_request("body is not UTF-8"))?;
    if text.trim().is_empty() {
        return Err(ApiError::bad_request("empty body"));
    }
    match serde_json::from_str::<PolynomialBody>(text) {
        Ok(b) => match b.coefficients {
            CoefficientInput::Text(s) => Ok(parse_coefficients(&s)?),
            CoefficientInput::Pairs(v) => Ok(v.iter().map(|p| C64::new(p[0], p[1])).collect()),
            CoefficientInput::Points(v) => Ok(v.into_iter().map(C64::from).collect()),
        },
        // Plain text bodies use the CLI grammar.
        Err(_) => Ok(parse_coefficients(text)?),
    }
}

pub async fn create_polynomial(State(state): State<AppState>, body: Bytes) -> ApiResult<Response> {
    let coeffs = parse_polynomial_body(&body)?;
    let p = MonicPolynomial::new(coeffs)?;
    if p.degree() < 2 {
        return Err(ApiError::bad_request("degree >= 2 required"));
    }
    let zero_root = p.has_zero_root();
    let degree = p.degree();
    let p1 = Pt::from(p.p1());
    let s = state.insert(p);
    let body = json!({
        "id": s.id,
        "degree": degree,
        "p1": p1,
        "zero_root": zero_root,
        "created_at": s.created_at,
    });
    Ok((StatusCode::CREATED, Json(body)).into_response())
}

/// Query parameters shared by the GET endpoints.
#[derive(Debug, Default, Deserialize)]
pub struct Params {
    id: Option<String>,
    theta: Option<String>,
    kind: Option<String>,
    from: Option<String>,
    to: Option<String>,
    n: Option<usize>,
    tol: Option<f64>,
    method: Option<String>,
    seed: Option<u64>,
    maxit: Option<usize>,
    temp: Option<f64>,
    tmax: Option<usize>,
    t_max: Option<f64>,
    grid_points: Option<usize>,
    workers: Option<usize>,
}

impl Params {
    fn optimizer(&self) -> ApiResult<OptimizerConfig> {
        let mut cfg = OptimizerConfig::default();
        if let Some(m) = &self.method {
            cfg.method = m.parse()?;
        }
        cfg.seed = self.seed.unwrap_or(cfg.seed);
        cfg.max_iterations = self.maxit.unwrap_or(cfg.max_iterations);
        cfg.initial_temperature = self.temp.unwrap_or(cfg.initial_temperature);
        cfg.evals_per_temperature = self.tmax.unwrap_or(cfg.evals_per_temperature);
        cfg.grid_t_max = self.t_max.or(cfg.grid_t_max);
        cfg.grid_points = self.grid_points.unwrap_or(cfg.grid_points);
        cfg.validate()?;
        Ok(cfg)
    }
}

fn angle(s: Option<&str>, default: f64) -> ApiResult<f64> {
    match s {
        Some(s) => Ok(parse_angle(s)?),
        None => Ok(default),
    }
}

#[derive(Serialize)]
struct Polylines {
    l1: Vec<Pt>,
    tc: Vec<Pt>,
    tl: Vec<Pt>,
    zc: Vec<Pt>,
}

#[derive(Serialize)]
struct CurvePoint {
    t: f64,
    d2: Option<f64>,
}

#[derive(Serialize)]
struct FramePayload {
    frame: LzCFrame,
    minimization: Option<MinResult>,
    t_range: f64,
    polylines: Polylines,
    dsd_curve: Vec<CurvePoint>,
}

fn frame_payload(p: &MonicPolynomial, theta: f64, opt: &OptimizerConfig) -> ApiResult<FramePayload> {
    let minimization = if p.degree() >= 4 {
        Some(minimize_dsd(p, theta, opt)?)
    } else {
        None
    };
    let t_star = minimization.as_ref().and_then(|m| m.t_star);
    let frame = build_frame(p, theta, t_star)?;
    let hint = opt.grid_t_max.unwrap_or_else(|| default_grid_t_max(p));
    let t_range = 1.2 * hint.max(t_star.unwrap_or(0.0));
    let ts = |count: usize| (0..count).map(move |j| t_range * j as f64 / (count - 1) as f64);

    let line = frame.line();
    let l1 = vec![Pt::from(line.at(-t_range)), Pt::from(line.at(t_range))];
    let tc = if p.degree() >= 4 {
        ts(CURVE_POINTS)
            .filter_map(|t| terminal_curve_point(p, theta, t).ok().map(Pt::from))
            .collect()
    } else {
        Vec::new()
    };
    let tl = frame
        .terminal_semiline()
        .map(|s| ts(CURVE_POINTS).map(|t| Pt::from(s.at_t(t))).collect())
        .unwrap_or_default();
    let zc = frame
        .zc
        .map(|c| {
            (0..CIRCLE_POINTS)
                .map(|k| Pt::from(c.center + unit(2.0 * PI * k as f64 / (CIRCLE_POINTS - 1) as f64) * c.radius))
                .collect()
        })
        .unwrap_or_default();
    let dsd_curve = if p.degree() >= 4 {
        sample_dsd(p, theta, t_range, CURVE_POINTS)?
            .into_iter()
            .map(|(t, d2)| CurvePoint { t, d2 })
            .collect()
    } else {
        Vec::new()
    };
    Ok(FramePayload {
        frame,
        minimization,
        t_range,
        polylines: Polylines { l1, tc, tl, zc },
        dsd_curve,
    })
}

pub async fn frame(State(state): State<AppState>, Query(q): Query<Params>) -> ApiResult<Response> {
    let s = session(&state, q.id.as_deref())?;
    let theta = match q.theta.as_deref() {
        Some(t) => parse_angle(t)?,
        None => return Err(ApiError::bad_request("missing 'theta'")),
    };
    if !theta.is_finite() {
        return Err(ApiError::bad_request("theta must be finite"));
    }
    if s.polynomial.degree() < 3 {
        return Err(ApiError::bad_request(
            "frames need degree >= 3; quadratics are solved in closed form",
        ));
    }
    let opt = q.optimizer()?;
    let payload = blocking(move || frame_payload(&s.polynomial, theta, &opt)).await?;
    let degenerate = payload.frame.zc.is_none() || (payload.frame.degree >= 4 && payload.frame.t_star.is_none());
    let status = if degenerate {
        StatusCode::UNPROCESSABLE_ENTITY
    } else {
        StatusCode::OK
    };
    Ok((status, Json(payload)).into_response())
}

fn partition(state: &AppState, from: f64, to: f64, n: usize) -> ApiResult<PartitionSpec> {
    if n > state.max_n {
        return Err(ApiError::new(
            StatusCode::PAYLOAD_TOO_LARGE,
            format!("n = {n} exceeds the server cap of {}", state.max_n),
        ));
    }
    Ok(PartitionSpec::new(from, to, n)?)
}

fn maps_of(solution: Solution) -> Vec<MapReport> {
    match solution {
        Solution::Maps(r) => {
            let r = *r;
            [r.e, r.dd2, r.dt].into_iter().flatten().collect()
        }
        Solution::Quadratic(_) => Vec::new(),
    }
}

pub async fn map(State(state): State<AppState>, Query(q): Query<Params>) -> ApiResult<Json<MapReport>> {
    let s = session(&state, q.id.as_deref())?;
    let kind: MapKind = q.kind.as_deref().unwrap_or("e").parse()?;
    let part = partition(
        &state,
        angle(q.from.as_deref(), -PI)?,
        angle(q.to.as_deref(), PI)?,
        q.n.unwrap_or(1000),
    )?;
    let degree = s.polynomial.degree();
    if degree < 3 || (kind != MapKind::E && degree < 4) {
        return Err(ApiError::bad_request(format!(
            "the {} map needs degree >= {}",
            kind.as_str(),
            if kind == MapKind::E { 3 } else { 4 }
        )));
    }
    let (tol_dd2, tol_dt) = match kind {
        MapKind::E => (None, None),
        MapKind::DD2 => (q.tol, None),
        MapKind::DT => (None, q.tol),
    };
    let plan = MapPlan::resolve(
        Some(vec![kind]),
        if kind == MapKind::E { q.tol } else { None },
        tol_dd2,
        tol_dt,
        false,
    )?;
    let opt = q.optimizer()?;
    let workers = q.workers;
    let report = blocking(move || {
        let sol = solve_maps(&s.polynomial, &part, &opt, &plan, workers)?;
        maps_of(sol)
            .into_iter()
            .next()
            .ok_or_else(|| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "no map produced"))
    })
    .await?;
    Ok(Json(report))
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum AngleInput {
    Num(f64),
    Text(String),
}

impl AngleInput {
    fn value(&self) -> ApiResult<f64> {
        match self {
            AngleInput::Num(x) => Ok(*x),
            AngleInput::Text(s) => Ok(parse_angle(s)?),
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(default)]
struct SolveOptions {
    n: Option<usize>,
    from: Option<AngleInput>,
    to: Option<AngleInput>,
    kinds: Option<Vec<MapKind>>,
    tol_e: Option<f64>,
    tol_dd2: Option<f64>,
    tol_dt: Option<f64>,
    dedup: bool,
    optimizer: OptimizerConfig,
    workers: Option<usize>,
}

#[derive(Debug, Deserialize)]
struct SolveRequest {
    id: String,
    #[serde(default)]
    options: SolveOptions,
}

/// A map report without the map arrays.
#[derive(Serialize)]
pub struct TableView {
    kind: MapKind,
    tol: f64,
    crossings: Vec<Crossing>,
    table: Vec<EstimateRow>,
    gaps: Vec<GapInterval>,
    rescued: Option<EstimateRow>,
}

#[derive(Serialize)]
pub struct SolveResponse {
    id: String,
    degree: usize,
    quadratic: Option<QuadraticSolution>,
    tables: Vec<TableView>,
}

pub async fn solve(State(state): State<AppState>, body: Bytes) -> ApiResult<Json<SolveResponse>> {
    let req: SolveRequest =
        serde_json::from_slice(&body).map_err(|e| ApiError::bad_request(format!("invalid request: {e}")))?;
    let s = session(&state, Some(&req.id))?;
    let o = req.options;
    let from = o.from.as_ref().map_or(Ok(-PI), AngleInput::value)?;
    let to = o.to.as_ref().map_or(Ok(PI), AngleInput::value)?;
    let part = partition(&state, from, to, o.n.unwrap_or(2500))?;
    let plan = MapPlan::resolve(o.kinds, o.tol_e, o.tol_dd2, o.tol_dt, o.dedup)?;
    o.optimizer.validate()?;
    let (opt, workers) = (o.optimizer, o.workers);
    let degree = s.polynomial.degree();
    let id = s.id.clone();
    let solution = blocking(move || Ok(solve_maps(&s.polynomial, &part, &opt, &plan, workers)?)).await?;
    let quadratic = match &solution {
        Solution::Quadratic(q) => Some(*q),
        Solution::Maps(_) => None,
    };
    let tables = maps_of(solution)
        .into_iter()
        .map(|r| TableView {
            kind: r.map.kind,
            tol: r.tol,
            crossings: r.crossings,
            table: r.table,
            gaps: r.gaps,
            rescued: r.rescued,
        })
        .collect();
    Ok(Json(SolveResponse {
        id,
        degree,
        quadratic,
        tables,
    }))
}
