use std::f64::consts::PI;

use lc_core::dsd_optimizer::{default_grid_t_max, dsd_derivative, minimize_dsd, minimize_dsd_at, sample_dsd};
use lc_core::lzc_engine::dsd;
use lc_core::{Method, MinStatus, MonicPolynomial, OptimizerConfig, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn deg7() -> MonicPolynomial {
    MonicPolynomial::from_pairs(&[
        (0.75236627, 0.7632200),
        (-0.88646602, -0.0588508),
        (-0.36898968, -0.8967600),
        (0.61107101, 0.4171449),
        (-0.11086361, 0.3804181),
        (-0.12915236, -0.2105427),
        (0.03085174, 0.0215915),
    ])
    .unwrap()
}

fn wilkinson5() -> MonicPolynomial {
    MonicPolynomial::from_pairs(&[(-15.0, 0.0), (85.0, 0.0), (-225.0, 0.0), (274.0, 0.0), (-120.0, 0.0)]).unwrap()
}

fn two_phase() -> OptimizerConfig {
    OptimizerConfig {
        method: Method::TwoPhase,
        ..OptimizerConfig::default()
    }
}

#[test]
fn degree_seven_minimum() {
    for cfg in [OptimizerConfig::default(), two_phase()] {
        let m = minimize_dsd(&deg7(), 0.73136, &cfg).unwrap();
        assert_eq!(m.status, MinStatus::Ok);
        assert!((m.t_star.unwrap() - 1.2465).abs() < 1e-3, "{:?}", m.t_star);
        assert!(
            (m.min_value.unwrap() - 4.2053e-3).abs() < 1e-3 * 4.2053e-3,
            "{:?}",
            m.min_value
        );
    }
}

#[test]
fn wilkinson_minima_on_the_plotted_interval() {
    let cfg = OptimizerConfig {
        grid_t_max: Some(8.0),
        ..OptimizerConfig::default()
    };
    let m = minimize_dsd(&wilkinson5(), PI, &cfg).unwrap();
    let ts: Vec<f64> = m.all_minima.iter().map(|x| x.0).collect();
    assert_eq!(ts.len(), 5, "{ts:?}");
    for (t, want) in ts.iter().zip([2.5, 3.5, 4.5, 5.5, 6.5]) {
        assert!((t - want).abs() < 1e-6);
    }
    assert!(m.all_minima.iter().all(|x| x.1 <= 1e-8));
    // The full default interval also holds a shallow non-root minimum at Z < 0.
    let wide = minimize_dsd(&wilkinson5(), PI, &OptimizerConfig::default()).unwrap();
    assert!(wide.all_minima.len() > 5);
    assert!(wide.all_minima.windows(2).all(|w| w[0].0 < w[1].0));
}

#[test]
fn two_phase_returns_a_single_minimizer() {
    let m = minimize_dsd(&wilkinson5(), PI, &two_phase()).unwrap();
    assert!(m.all_minima.len() <= 1);
}

#[test]
fn derivative_brackets_wilkinson_minima() {
    let p = wilkinson5();
    for t in [2.5, 3.5, 4.5, 5.5, 6.5] {
        assert!(dsd_derivative(&p, PI, t - 0.05).unwrap() < 0.0);
        assert!(dsd_derivative(&p, PI, t + 0.05).unwrap() > 0.0);
        assert!(dsd_derivative(&p, PI, t).unwrap().abs() < 1e-4);
    }
    let (theta, t) = (0.4, 1.3);
    let h = 1e-6f64.max(1e-6 * t);
    let fd = (dsd(&p, theta, t + h).unwrap() - dsd(&p, theta, t - h).unwrap()) / (2.0 * h);
    assert_eq!(dsd_derivative(&p, theta, t).unwrap(), fd);
}

#[test]
fn root_frames_reach_zero() {
    let roots = [
        C64::new(0.3, 0.9),
        C64::new(-0.8, 0.2),
        C64::new(0.1, -0.7),
        C64::new(0.9, -0.4),
    ];
    let p = MonicPolynomial::from_roots(&roots).unwrap();
    for r in roots {
        let theta = p.theta_root(r).unwrap();
        let m = minimize_dsd(&p, theta, &OptimizerConfig::default()).unwrap();
        assert!(m.min_value.is_some_and(|v| v <= 1e-10), "{theta} {m:?}");
        // The stochastic search is unconstrained and may settle behind P1 instead.
        let m = minimize_dsd(&p, theta, &two_phase()).unwrap();
        match m.status {
            MinStatus::Ok => assert!(dsd_derivative(&p, theta, m.t_star.unwrap()).unwrap().abs() < 1e-6),
            status => assert_eq!(status, MinStatus::RejectedNegative),
        }
    }
}

#[test]
fn negative_minimizers_are_rejected() {
    // Along θ the roots sit behind P1, so the unconstrained minimum has t < 0.
    let p = MonicPolynomial::from_roots(&[
        C64::new(-2.0, 0.0),
        C64::new(-2.1, 0.1),
        C64::new(-1.9, -0.1),
        C64::new(-2.0, 0.2),
    ])
    .unwrap();
    let theta = 0.0;
    for cfg in [OptimizerConfig::default(), two_phase()] {
        let m = minimize_dsd(&p, theta, &cfg).unwrap();
        if m.status == MinStatus::Ok {
            assert!(m.t_star.unwrap() >= 0.0);
        } else {
            assert!(m.t_star.is_none() && m.min_value.is_none());
        }
    }
}

#[test]
fn determinism_per_index() {
    let p = deg7();
    let cfg = two_phase();
    let a = minimize_dsd_at(&p, 0.3, 17, &cfg).unwrap();
    let b = minimize_dsd_at(&p, 0.3, 17, &cfg).unwrap();
    assert_eq!(a, b);
    let other_seed = OptimizerConfig { seed: 7, ..cfg };
    let c = minimize_dsd_at(&p, 0.3, 17, &other_seed).unwrap();
    assert_eq!(c.status, MinStatus::Ok);
}

#[test]
fn grid_agrees_with_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..12 {
        let deg = rng.random_range(4..=6);
        let roots: Vec<C64> = (0..deg)
            .map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let p = MonicPolynomial::from_roots(&roots).unwrap();
        let theta = rng.random_range(-PI..PI);
        let m = minimize_dsd(&p, theta, &OptimizerConfig::default()).unwrap();
        let t_max = default_grid_t_max(&p);
        let samples: Vec<(f64, f64)> = (0..=100_000)
            .map(|i| {
                let t = t_max * i as f64 / 100_000.0;
                (t, dsd(&p, theta, t).unwrap_or(f64::INFINITY))
            })
            .collect();
        // Lowest interior discrete minimum; the endpoint t = 0 is not a stationary point.
        let k = (1..samples.len() - 1)
            .filter(|&i| samples[i].1 < samples[i - 1].1 && samples[i].1 <= samples[i + 1].1)
            .min_by(|&a, &b| samples[a].1.total_cmp(&samples[b].1));
        let Some(k) = k else {
            assert_ne!(m.status, MinStatus::Ok);
            continue;
        };
        let brute = {
            // Parabola through the three samples around the discrete minimum.
            let (y0, y1, y2) = (samples[k - 1].1, samples[k].1, samples[k + 1].1);
            let h = samples[1].0;
            let denom = y0 - 2.0 * y1 + y2;
            let off = if denom > 0.0 { 0.5 * h * (y0 - y2) / denom } else { 0.0 };
            dsd(&p, theta, samples[k].0 + off).unwrap().min(y1)
        };
        match m.status {
            MinStatus::Ok => {
                let v = m.min_value.unwrap();
                assert!(v <= brute * (1.0 + 1e-6) + 1e-15, "grid {v} vs brute {brute}");
                assert!(
                    (v - brute).abs() <= 1e-6 * brute.max(1e-12),
                    "grid {v} vs brute {brute}"
                );
                for d in [1e-4, 1e-3] {
                    let t = m.t_star.unwrap();
                    assert!(dsd(&p, theta, t + d).unwrap() >= v - 1e-9);
                    if t >= d {
                        assert!(dsd(&p, theta, t - d).unwrap() >= v - 1e-9);
                    }
                }
            }
            status => panic!("{status:?} with an interior minimum at t = {}", samples[k].0),
        }
    }
}

#[test]
fn config_validation_and_sampling() {
    let bad = OptimizerConfig {
        grid_points: 1,
        ..OptimizerConfig::default()
    };
    assert!(minimize_dsd(&deg7(), 0.1, &bad).is_err());
    let cubic = MonicPolynomial::from_pairs(&[(1.0, 0.0); 3]).unwrap();
    assert!(minimize_dsd(&cubic, 0.1, &OptimizerConfig::default()).is_err());
    let s = sample_dsd(&deg7(), 0.73136, 3.0, 600).unwrap();
    assert_eq!(s.len(), 600);
    assert_eq!(s[0].0, 0.0);
    let json = serde_json::to_string(&OptimizerConfig::default()).unwrap();
    let back: OptimizerConfig = serde_json::from_str(&json).unwrap();
    assert_eq!(back, OptimizerConfig::default());
}
