use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use lc_core::dsd_optimizer::minimize_dsd;
use lc_core::lzc_engine::build_frame;
use lc_core::polynomial::{format_complex, parse_angle, parse_coefficients, parse_complex};
use lc_core::proximity_maps::{
    estimates_to_csv, solve, EstimateRow, GapInterval, MapKind, MapPlan, MapReport, PartitionSpec, Solution,
};
use lc_core::{LcError, Method, MonicPolynomial, OptimizerConfig, C64};
use serde::Serialize;

use crate::args::{Format, InputArgs, MethodArg, OptimizerArgs, OutputArgs, SweepArgs};
use crate::CliError;

pub fn read_polynomial(input: &InputArgs) -> Result<MonicPolynomial> {
    let text = match (&input.coeffs, &input.file) {
        (Some(c), None) => c.clone(),
        (None, Some(path)) => fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?,
        _ => return Err(CliError::Usage("give exactly one of --coeffs and --file".into()).into()),
    };
    Ok(MonicPolynomial::new(parse_coefficients(&text)?)?)
}

/// Rejects inputs the sweeps cannot handle: degree 1 and a root at zero.
fn check_solvable(p: &MonicPolynomial) -> Result<()> {
    if p.degree() < 2 {
        return Err(CliError::Usage("degree >= 2 required".into()).into());
    }
    if p.has_zero_root() {
        return Err(CliError::ZeroRoot.into());
    }
    Ok(())
}

/// `re,im` or a complex literal.
pub fn parse_shift(s: &str) -> Result<C64> {
    if let Some((re, im)) = s.split_once(',') {
        let num = |x: &str| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| LcError::Parse(format!("bad shift '{s}'")))
        };
        return Ok(C64::new(num(re)?, num(im)?));
    }
    Ok(parse_complex(s)?)
}

pub fn optimizer(args: &OptimizerArgs) -> Result<OptimizerConfig> {
    let mut cfg = OptimizerConfig {
        method: match args.method {
            MethodArg::Grid => Method::GridDiscretize,
            MethodArg::Twophase => Method::TwoPhase,
        },
        ..OptimizerConfig::default()
    };
    cfg.max_iterations = args.maxit.unwrap_or(cfg.max_iterations);
    cfg.initial_temperature = args.temp.unwrap_or(cfg.initial_temperature);
    cfg.evals_per_temperature = args.tmax.unwrap_or(cfg.evals_per_temperature);
    cfg.grid_t_max = args.grid_t_max.or(cfg.grid_t_max);
    cfg.grid_points = args.grid_points.unwrap_or(cfg.grid_points);
    cfg.seed = args.seed.unwrap_or(cfg.seed);
    cfg.validate()?;
    Ok(cfg)
}

struct Sweep {
    part: PartitionSpec,
    plan: MapPlan,
    opt: OptimizerConfig,
    workers: Option<usize>,
}

fn sweep(args: &SweepArgs) -> Result<Sweep> {
    let kinds = match &args.kinds {
        Some(ks) => Some(
            ks.iter()
                .map(|k| k.parse::<MapKind>())
                .collect::<lc_core::Result<Vec<_>>>()?,
        ),
        None => None,
    };
    Ok(Sweep {
        part: PartitionSpec::new(parse_angle(&args.from)?, parse_angle(&args.to)?, args.n)?,
        plan: MapPlan::resolve(kinds, args.tol_e, args.tol_dd2, args.tol_dt, args.dedup)?,
        opt: optimizer(&args.optimizer)?,
        workers: args.workers,
    })
}

fn render_table(report: &MapReport, offset: C64) -> String {
    let part = &report.map.partition;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "# {} map: N={} on [{}, {}), tol {}, {} crossings",
        report.map.kind.as_str(),
        part.count,
        part.from,
        part.to,
        report.tol,
        report.crossings.len()
    );
    let _ = writeln!(
        s,
        "{:>3}  {:<32} {:>13} {:>14} {:>14}",
        "i", "rx", "theta_hat", "delta", "d2"
    );
    for (i, r) in report.table.iter().enumerate() {
        let d2 = r.d2_quality.map_or("-".to_string(), |v| format!("{v:.6e}"));
        let _ = writeln!(
            s,
            "{:>3}  {:<32} {:>13.8} {:>14.6e} {:>14}",
            i + 1,
            format_complex(r.rx - offset),
            r.theta_hat,
            r.delta_quality,
            d2
        );
    }
    if let Some(r) = &report.rescued {
        let _ = writeln!(s, "rescued: theta_hat {:.8} (no smooth crossing near it)", r.theta_hat);
    }
    s
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(name);
    fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))
}

fn to_json<T: Serialize + ?Sized>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn shifted_rows(rows: &[EstimateRow], offset: C64) -> Vec<EstimateRow> {
    rows.iter()
        .map(|r| EstimateRow {
            rx: r.rx - offset,
            ..*r
        })
        .collect()
}

fn gaps_csv(gaps: &[GapInterval]) -> String {
    let mut s = String::from("from,to,branch\n");
    for g in gaps {
        let _ = writeln!(s, "{},{},{:?}", g.from, g.to, g.branch);
    }
    s
}

fn reports(solution: &Solution) -> Vec<&MapReport> {
    match solution {
        Solution::Maps(r) => r.reports().collect(),
        Solution::Quadratic(_) => Vec::new(),
    }
}

pub fn cmd_solve(input: &InputArgs, sweep_args: &SweepArgs, output: &OutputArgs, shift: Option<&str>) -> Result<()> {
    let original = read_polynomial(input)?;
    let offset = match shift {
        Some(s) => parse_shift(s)?,
        None => C64::new(0.0, 0.0),
    };
    let p = if shift.is_some() {
        original.shift_variable(offset)
    } else {
        original
    };
    check_solvable(&p)?;
    let sw = sweep(sweep_args)?;
    if shift.is_some() {
        eprintln!(
            "solving p(z - a) with a = {}; estimates are moved back by -a",
            format_complex(offset)
        );
    }
    let solution = solve(&p, &sw.part, &sw.opt, &sw.plan, sw.workers)?;
    if let Solution::Quadratic(q) = &solution {
        println!("r1 = {}", format_complex(q.r1 - offset));
        println!("r2 = {}", format_complex(q.r2 - offset));
        println!("theta* = {:.10}", q.theta_star);
        if let Some(dir) = &output.out {
            let rows = [q.r1 - offset, q.r2 - offset];
            let text = match output.format {
                Format::Csv => rows.iter().fold(String::from("re,im\n"), |mut s, z| {
                    let _ = writeln!(s, "{},{}", z.re, z.im);
                    s
                }),
                Format::Json => to_json(
                    &serde_json::json!({ "r1": [rows[0].re, rows[0].im], "r2": [rows[1].re, rows[1].im], "theta_star": q.theta_star }),
                )?,
            };
            write_file(dir, &format!("quadratic.{}", output.format.ext()), &text)?;
        }
        return Ok(());
    }
    for report in reports(&solution) {
        print!("{}", render_table(report, offset));
        println!();
        for g in &report.gaps {
            eprintln!(
                "warning: {} map, branch {:?}: gap on [{:.6}, {:.6}); try a regional sweep there",
                report.map.kind.as_str(),
                g.branch,
                g.from,
                g.to
            );
        }
        if let Some(dir) = &output.out {
            let rows = shifted_rows(&report.table, offset);
            let text = match output.format {
                Format::Csv => estimates_to_csv(&rows),
                Format::Json => to_json(&rows)?,
            };
            write_file(
                dir,
                &format!("{}_estimates.{}", report.map.kind.as_str(), output.format.ext()),
                &text,
            )?;
        }
    }
    Ok(())
}

/// `x y` lines; undefined values break the series with a blank line.
fn series(xs: &[f64], ys: &[Option<f64>]) -> String {
    let mut s = String::new();
    let mut broken = false;
    for (x, y) in xs.iter().zip(ys) {
        match y {
            Some(y) => {
                let _ = writeln!(s, "{x} {y}");
                broken = false;
            }
            None if !broken => {
                s.push('\n');
                broken = true;
            }
            None => {}
        }
    }
    s
}

pub fn cmd_map(input: &InputArgs, sweep_args: &SweepArgs, output: &OutputArgs, plot_data: bool) -> Result<()> {
    let p = read_polynomial(input)?;
    check_solvable(&p)?;
    if p.degree() < 3 {
        return Err(CliError::Usage("maps need degree >= 3".into()).into());
    }
    if plot_data && output.out.is_none() {
        return Err(CliError::Usage("--plot-data needs --out".into()).into());
    }
    let sw = sweep(sweep_args)?;
    let solution = solve(&p, &sw.part, &sw.opt, &sw.plan, sw.workers)?;
    for report in reports(&solution) {
        let kind = report.map.kind.as_str();
        let map_text = match output.format {
            Format::Csv => report.map.to_csv(),
            Format::Json => to_json(&report.map)?,
        };
        let summary = format!(
            "{kind} map: {} points, {} crossings, {} gaps\n",
            report.map.support.len(),
            report.crossings.len(),
            report.gaps.len()
        );
        let Some(dir) = &output.out else {
            eprint!("{summary}");
            print!("{map_text}");
            continue;
        };
        print!("{summary}");
        for g in &report.gaps {
            println!("  gap [{:.8}, {:.8}) branch {:?}", g.from, g.to, g.branch);
        }
        let ext = output.format.ext();
        write_file(dir, &format!("{kind}_map.{ext}"), &map_text)?;
        let gaps = match output.format {
            Format::Csv => gaps_csv(&report.gaps),
            Format::Json => to_json(&report.gaps)?,
        };
        write_file(dir, &format!("{kind}_gaps.{ext}"), &gaps)?;
        let rows = match output.format {
            Format::Csv => estimates_to_csv(&report.table),
            Format::Json => to_json(&report.table)?,
        };
        write_file(dir, &format!("{kind}_estimates.{ext}"), &rows)?;
        if plot_data {
            write_file(
                dir,
                &format!("{kind}_a.dat"),
                &series(&report.map.support, &report.map.values_a),
            )?;
            if report.map.kind == MapKind::E {
                write_file(
                    dir,
                    &format!("{kind}_b.dat"),
                    &series(&report.map.support, &report.map.values_b),
                )?;
            }
        }
    }
    Ok(())
}

pub fn cmd_frame(input: &InputArgs, theta: &str, opt_args: &OptimizerArgs) -> Result<()> {
    let p = read_polynomial(input)?;
    check_solvable(&p)?;
    if p.degree() < 3 {
        return Err(CliError::Usage("frames need degree >= 3".into()).into());
    }
    let theta = parse_angle(theta)?;
    let opt = optimizer(opt_args)?;
    let min = if p.degree() >= 4 {
        Some(minimize_dsd(&p, theta, &opt)?)
    } else {
        None
    };
    let frame = build_frame(&p, theta, min.as_ref().and_then(|m| m.t_star))?;
    if let Some(reason) = &frame.reason {
        eprintln!("warning: {reason}");
    }
    print!(
        "{}",
        to_json(&serde_json::json!({ "frame": frame, "minimization": min }))?
    );
    Ok(())
}

fn coefficient_lines(p: &MonicPolynomial) -> String {
    p.coeffs().iter().fold(String::new(), |mut s, c| {
        let _ = writeln!(s, "{} {}", c.re, c.im);
        s
    })
}

pub fn cmd_shift(input: &InputArgs, shift: &str) -> Result<()> {
    let p = read_polynomial(input)?;
    let a = parse_shift(shift)?;
    print!("{}", coefficient_lines(&p.shift_variable(a)));
    Ok(())
}

pub fn cmd_quartic(input: &InputArgs) -> Result<()> {
    let p = read_polynomial(input)?;
    if p.degree() != 4 {
        return Err(CliError::Usage(format!("quartic needs degree 4, got {}", p.degree())).into());
    }
    for r in p.solve_quartic_resolvent()? {
        println!("{}", format_complex(r));
    }
    Ok(())
}
