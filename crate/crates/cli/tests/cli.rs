use std::path::Path;
use std::process::{Command, Output};

use lc_core::polynomial::parse_complex;
use lc_core::C64;

const MIXED_CUBIC: &str = "0.19699632 1.1229974, -0.54949766 -0.3353859, 0.09869309 0.0054156";
const W5: &str = "-15, 85, -225, 274, -120";

fn lc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lc"))
        .args(args)
        .env_remove("LC_SEED")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Complex values on lines of `name = value` or one per line.
fn complexes(text: &str) -> Vec<C64> {
    text.lines()
        .filter_map(|l| l.rsplit('=').next())
        .filter_map(|s| parse_complex(s.trim()).ok())
        .collect()
}

fn near(found: &[C64], want: C64, tol: f64) -> bool {
    found.iter().any(|z| (z - want).norm() <= tol)
}

fn estimates(dir: &Path, kind: &str) -> Vec<(C64, Option<f64>)> {
    let text = std::fs::read_to_string(dir.join(format!("{kind}_estimates.csv"))).unwrap();
    text.lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (
                C64::new(f[0].parse().unwrap(), f[1].parse().unwrap()),
                f[4].parse().ok(),
            )
        })
        .collect()
}

#[test]
fn quadratic_closed_form() {
    let o = lc(&["solve", "--coeffs", "1 1, 2 2"]);
    assert!(o.status.success());
    let roots = complexes(&stdout(&o));
    assert!(near(&roots, C64::new(-1.0, 1.0), 1e-9) && near(&roots, C64::new(0.0, -2.0), 1e-9));

    let o = lc(&["solve", "--coeffs", "0, -1"]);
    let roots = complexes(&stdout(&o));
    assert!(near(&roots, C64::new(1.0, 0.0), 1e-12) && near(&roots, C64::new(-1.0, 0.0), 1e-12));
}

#[test]
fn cubic_map_reproduces_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = lc(&[
        "map",
        "--coeffs",
        MIXED_CUBIC,
        "--n",
        "1000",
        "--out",
        out,
        "--plot-data",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let map = std::fs::read_to_string(dir.path().join("e_map.csv")).unwrap();
    assert_eq!(map.lines().count(), 1001);
    let text = std::fs::read_to_string(dir.path().join("e_estimates.csv")).unwrap();
    let mut thetas: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    thetas.sort_by(f64::total_cmp);
    assert_eq!(thetas.len(), 3);
    for (g, w) in thetas.iter().zip([-2.6919246, 0.7284104, 0.9936258]) {
        assert!((g - w).abs() < 1e-6);
    }
    assert!(dir.path().join("e_gaps.csv").exists());
    assert!(dir.path().join("e_a.dat").exists() && dir.path().join("e_b.dat").exists());
}

#[test]
fn two_point_map() {
    let o = lc(&["map", "--coeffs", MIXED_CUBIC, "--n", "2"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 3);
}

#[test]
fn shifted_wilkinson_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("wilkinson5.txt");
    std::fs::write(&file, W5.replace(", ", "\n")).unwrap();
    let out = dir.path().join("out");
    let o = lc(&[
        "solve",
        "--file",
        file.to_str().unwrap(),
        "--shift",
        "0,-2",
        "--n",
        "2500",
        "--from",
        "0",
        "--to",
        "pi",
        "--tol-dd2",
        "100",
        "--tol-dt",
        "100",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rows: Vec<C64> = ["e", "dd2", "dt"]
        .iter()
        .flat_map(|k| estimates(&out, k))
        .filter(|(_, d2)| d2.is_some_and(|v| v < 1e-6))
        .map(|(z, _)| z)
        .collect();
    for k in 1..=5 {
        assert!(near(&rows, C64::new(k as f64, 0.0), 1e-4), "root {k} missing");
    }
}

#[test]
fn degree_fifteen_dt_map() {
    let dir = tempfile::tempdir().unwrap();
    let coeffs: Vec<String> = (1..=15).map(|m| m.to_string()).collect();
    let o = lc(&[
        "solve",
        "--coeffs",
        &coeffs.join(", "),
        "--n",
        "1000",
        "--kinds",
        "dt",
        "--tol-dt",
        "10",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let rows: Vec<C64> = estimates(dir.path(), "dt").into_iter().map(|r| r.0).collect();
    let p = lc_core::MonicPolynomial::from_pairs(&(1..=15).map(|m| (m as f64, 0.0)).collect::<Vec<_>>()).unwrap();
    let roots = lc_core::polynomial::oracle_roots(&p).unwrap().roots;
    let found = roots
        .iter()
        .filter(|&&r| rows.iter().any(|z| (z - r).norm() / r.norm() < 1e-4))
        .count();
    assert_eq!(found, 15);
}

#[test]
fn shift_command() {
    let o = lc(&["shift", "--coeffs", W5, "--shift", "0,-2"]);
    let want = ["-15 10", "45 -120", "135 430", "-666 -420", "540 -100"];
    assert_eq!(stdout(&o).lines().collect::<Vec<_>>(), want);

    let o = lc(&["shift", "--coeffs", "1.5 -2, 3 0.25", "--shift", "0,0"]);
    assert_eq!(stdout(&o).lines().collect::<Vec<_>>(), ["1.5 -2", "3 0.25"]);

    let there = stdout(&lc(&["shift", "--coeffs", MIXED_CUBIC, "--shift", "0.3,-1.7"]));
    let back = stdout(&lc(&[
        "shift",
        "--coeffs",
        &there.replace('\n', ","),
        "--shift",
        "-0.3,1.7",
    ]));
    let orig = lc_core::polynomial::parse_coefficients(MIXED_CUBIC).unwrap();
    let round = lc_core::polynomial::parse_coefficients(&back).unwrap();
    for (a, b) in orig.iter().zip(&round) {
        assert!((a - b).norm() < 1e-10);
    }
}

#[test]
fn quartic_command() {
    let roots = complexes(&stdout(&lc(&["quartic", "--coeffs", "-10, 35, -50, 24"])));
    for k in 1..=4 {
        assert!(near(&roots, C64::new(k as f64, 0.0), 1e-9));
    }
    let roots = complexes(&stdout(&lc(&["quartic", "--coeffs", "0, 5, 0, 4"])));
    for z in [
        C64::new(0.0, 1.0),
        C64::new(0.0, -1.0),
        C64::new(0.0, 2.0),
        C64::new(0.0, -2.0),
    ] {
        assert!(near(&roots, z, 1e-9));
    }
    let roots = complexes(&stdout(&lc(&["quartic", "--coeffs", "1+i, 2+2i, 3+3i, 4+4i"])));
    for z in [
        C64::new(0.217902, 1.406896),
        C64::new(-1.231898, 0.586985),
        C64::new(-0.846674, -1.167477),
        C64::new(0.860670, -1.826404),
    ] {
        assert!(near(&roots, z, 2e-6));
    }
}

#[test]
fn frame_command() {
    let o = lc(&["frame", "--coeffs", MIXED_CUBIC, "--theta", "-pi/2"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["frame"]["degree"], 3);
    assert!(v["minimization"].is_null());
}

#[test]
fn exit_codes() {
    assert_eq!(lc(&["solve", "--coeffs", "1 x"]).status.code(), Some(2));
    assert_eq!(lc(&["solve"]).status.code(), Some(2));
    assert_eq!(lc(&["solve", "--coeffs", "1", "--file", "x"]).status.code(), Some(2));
    assert_eq!(lc(&["solve", "--coeffs", "3"]).status.code(), Some(2));
    assert_eq!(lc(&["solve", "--coeffs", W5, "--kinds", "dd2"]).status.code(), Some(2));
    assert_eq!(lc(&["map", "--coeffs", MIXED_CUBIC, "--n", "1"]).status.code(), Some(2));
    let o = lc(&["solve", "--coeffs", "1, 2, 0"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("shift"));
    assert!(o.stdout.is_empty());
}

#[test]
fn identical_runs_write_identical_files() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let run = |dir: &Path, seed_flag: bool| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_lc"));
        cmd.args([
            "map", "--coeffs", W5, "--n", "300", "--method", "twophase", "--tol-dt", "100", "--format", "json",
        ]);
        cmd.args(["--out", dir.to_str().unwrap()]);
        if seed_flag {
            cmd.args(["--seed", "7"]);
        } else {
            cmd.env("LC_SEED", "7");
        }
        assert!(cmd.output().unwrap().status.success());
    };
    run(a.path(), true);
    run(b.path(), false);
    for name in ["e_map.json", "dt_map.json", "e_estimates.json", "dt_gaps.json"] {
        let x = std::fs::read(a.path().join(name)).unwrap();
        let y = std::fs::read(b.path().join(name)).unwrap();
        assert_eq!(x, y, "{name} differs");
    }
}
