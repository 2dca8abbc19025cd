use sr_qsd::dist::qsd_cdf;
use sr_qsd::eigen::solve_lambda_default;
use sr_qsd::exec::Execution;
use sr_qsd::mc::*;

fn killed(r0: f64, dt: f64, t_end: f64, n_paths: usize, seed: u64) -> McConfig {
    McConfig {
        r0,
        dt,
        t_end,
        n_paths,
        seed,
        ..McConfig::killed(20.0).unwrap()
    }
}

fn max_se(n: usize) -> f64 {
    0.5 / (n as f64).sqrt()
}

#[test]
fn headstart_is_forgotten() {
    let a = simulate_killed(&killed(1.0, 1e-3, 100.0, 20_000, 11)).unwrap();
    let b = simulate_killed(&killed(10.0, 1e-3, 100.0, 20_000, 12)).unwrap();
    let d = ks_two_sample(&a.samples, &b.samples);
    let combined = (a.max_std_err().powi(2) + b.max_std_err().powi(2)).sqrt();
    assert!(d <= 3.0 * combined, "KS {d} vs {combined} ({} / {} survivors)", a.survivors, b.survivors);
}

#[test]
fn step_halving_is_within_noise() {
    let ctx = solve_lambda_default(20.0).unwrap();
    let q = |x: f64| qsd_cdf(&ctx, x).unwrap();
    let mut coarse = simulate_killed(&killed(5.0, 2e-3, 60.0, 20_000, 3)).unwrap();
    let mut fine = simulate_killed(&killed(5.0, 1e-3, 60.0, 20_000, 3)).unwrap();
    let (kc, kf) = (coarse.compare_to(q), fine.compare_to(q));
    let noise = 3.0 * (max_se(coarse.survivors) + max_se(fine.survivors));
    assert!((kc - kf).abs() <= noise, "{kc} vs {kf}, noise {noise}");
    assert_eq!(fine.ks_vs, Some(kf));
}

#[test]
fn unrestricted_median_near_stationary_median() {
    let cfg = McConfig {
        n_paths: 20_000,
        t_end: 100.0,
        seed: 5,
        ..McConfig::unrestricted()
    };
    let e = simulate_unrestricted(&cfg).unwrap();
    let m = e.samples[e.samples.len() / 2];
    let target = 2.0 / 2f64.ln();
    // Standard error of the median: 1 / (2 h(m) √n).
    let h = 2.0 / (target * target) * 0.5;
    let se = 1.0 / (2.0 * h * (e.samples.len() as f64).sqrt());
    assert!((m - target).abs() <= 4.0 * se, "median {m}, se {se}");
}

#[test]
fn unrestricted_same_seed_same_bits() {
    let cfg = McConfig {
        n_paths: 2_000,
        t_end: 20.0,
        seed: 9,
        ..McConfig::unrestricted()
    };
    let a = simulate_unrestricted_with(&cfg, Execution::Sequential).unwrap();
    let b = simulate_unrestricted_with(&cfg, Execution::Parallel).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.survivors, a.n_paths);
}

#[test]
fn martingale_mean() {
    let cfg = McConfig {
        r0: 1.0,
        dt: 1e-3,
        t_end: 2.0,
        n_paths: 20_000,
        seed: 21,
        ..McConfig::unrestricted()
    };
    let e = simulate_unrestricted(&cfg).unwrap();
    let z = (e.mean_terminal - 3.0) / e.mean_std_err;
    assert!(z.abs() <= 4.0, "z = {z}");
}

#[test]
fn headstart_at_threshold_rejected() {
    assert!(simulate_killed(&killed(20.0, 1e-3, 1.0, 10, 0)).is_err());
}
