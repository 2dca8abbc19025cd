//! Monte Carlo oracle for the diffusion `dR = dt + R dB`.
//!
//! Euler–Maruyama on `R` directly, `R ← max(0, R + dt + R √dt Z)`, with the
//! kill check at grid times only. Path `i` draws from
//! `ChaCha8Rng::seed_from_u64(seed)` on stream `i`, so results do not depend
//! on thread scheduling or on how many other paths are run.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::grid::{abscissae, GridKind};

#[derive(Debug, Clone, PartialEq)]
pub struct McConfig {
    /// Absorbing level; `None` for the unrestricted process.
    pub threshold: Option<f64>,
    /// Headstart `R_0`.
    pub r0: f64,
    pub dt: f64,
    pub t_end: f64,
    pub n_paths: usize,
    pub seed: u64,
    /// Points at which the empirical cdf is reported.
    pub grid: Vec<f64>,
}

impl McConfig {
    /// Killed run at `a`: start at 0, `dt = 10⁻³`, horizon `5A`, 10000
    /// paths, 256-point linear grid on `(0, A]`.
    pub fn killed(a: f64) -> Result<Self> {
        Ok(Self {
            threshold: Some(a),
            r0: 0.0,
            dt: 1e-3,
            t_end: 5.0 * a,
            n_paths: 10_000,
            seed: 0,
            grid: abscissae(a, 256, GridKind::Linear)?,
        })
    }

    /// Unrestricted run: `dt = 10⁻²`, horizon 200, 10000 paths, 256-point
    /// log grid on `(0.1, 100]`.
    pub fn unrestricted() -> Self {
        Self {
            threshold: None,
            r0: 0.0,
            dt: 1e-2,
            t_end: 200.0,
            n_paths: 10_000,
            seed: 0,
            grid: abscissae(100.0, 256, GridKind::Log).expect("static grid"),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return bad(format!("dt must be positive, got {}", self.dt));
        }
        if !(self.t_end >= 10.0 * self.dt) || !self.t_end.is_finite() {
            return bad(format!("t_end must be at least 10 dt, got {}", self.t_end));
        }
        if self.n_paths == 0 {
            return bad("n_paths must be at least 1".into());
        }
        if !(self.r0 >= 0.0) || !self.r0.is_finite() {
            return bad(format!("r0 must be nonnegative, got {}", self.r0));
        }
        if let Some(a) = self.threshold {
            if !(a > 0.0) || !a.is_finite() {
                return bad(format!("threshold must be positive and finite, got {a}"));
            }
            if self.r0 >= a {
                return bad(format!("r0 = {} must be below the threshold {a}", self.r0));
            }
        }
        if self.grid.iter().any(|g| !g.is_finite()) || self.grid.windows(2).any(|w| w[0] > w[1]) {
            return bad("grid must be finite and nondecreasing".into());
        }
        Ok(())
    }

    fn steps(&self) -> u64 {
        (self.t_end / self.dt).round() as u64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct McEstimate {
    pub n_paths: usize,
    pub survivors: usize,
    /// Empirical cdf of terminal values at each grid point.
    pub cdf_hat: Vec<f64>,
    /// Binomial standard error `√(p(1-p)/n)` at each grid point.
    pub std_err: Vec<f64>,
    /// Sorted terminal values of surviving paths.
    pub samples: Vec<f64>,
    pub mean_terminal: f64,
    pub mean_std_err: f64,
    /// KS distance to a reference cdf, once [`McEstimate::compare_to`] ran.
    pub ks_vs: Option<f64>,
}

impl McEstimate {
    pub fn max_std_err(&self) -> f64 {
        self.std_err.iter().copied().fold(0.0, f64::max)
    }

    /// Compute and store the KS distance to `cdf`.
    pub fn compare_to<F: FnMut(f64) -> f64>(&mut self, cdf: F) -> f64 {
        let d = ks_statistic(&self.samples, cdf);
        self.ks_vs = Some(d);
        d
    }
}

/// Exact one-sample KS statistic of sorted `samples` against `cdf`.
pub fn ks_statistic<F: FnMut(f64) -> f64>(samples: &[f64], mut cdf: F) -> f64 {
    let n = samples.len() as f64;
    samples.iter().enumerate().fold(0.0, |d, (i, &x)| {
        let f = cdf(x);
        d.max((i as f64 + 1.0) / n - f).max(f - i as f64 / n)
    })
}

/// Two-sample KS statistic of two sorted samples.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut d) = (0, 0, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

fn run_path(cfg: &McConfig, steps: u64, index: usize) -> Option<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    let sq = cfg.dt.sqrt();
    let mut r = cfg.r0;
    let kill = cfg.threshold.unwrap_or(f64::INFINITY);
    for _ in 0..steps {
        let z: f64 = StandardNormal.sample(&mut rng);
        r = (r + cfg.dt + r * sq * z).max(0.0);
        if r >= kill {
            return None;
        }
    }
    Some(r)
}

fn simulate(op: &'static str, cfg: &McConfig, exec: Execution) -> Result<McEstimate> {
    cfg.validate()?;
    let steps = cfg.steps();
    let terminal = exec.map_range(cfg.n_paths, |i| run_path(cfg, steps, i));
    let mut samples: Vec<f64> = terminal.into_iter().flatten().collect();
    if samples.is_empty() {
        return Err(Error::Degenerate {
            op,
            n_paths: cfg.n_paths,
        });
    }
    samples.sort_by(f64::total_cmp);
    let n = samples.len() as f64;
    let cdf_hat: Vec<f64> = cfg
        .grid
        .iter()
        .map(|&g| samples.partition_point(|&s| s <= g) as f64 / n)
        .collect();
    let std_err = cdf_hat.iter().map(|&p| (p * (1.0 - p) / n).sqrt()).collect();
    let mean = samples.iter().sum::<f64>() / n;
    let var = if samples.len() > 1 {
        samples.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    Ok(McEstimate {
        n_paths: cfg.n_paths,
        survivors: samples.len(),
        cdf_hat,
        std_err,
        samples,
        mean_terminal: mean,
        mean_std_err: (var / n).sqrt(),
        ks_vs: None,
    })
}

/// Simulate paths killed at `cfg.threshold` and keep the survivors.
pub fn simulate_killed(cfg: &McConfig) -> Result<McEstimate> {
    simulate_killed_with(cfg, Execution::default())
}

pub fn simulate_killed_with(cfg: &McConfig, exec: Execution) -> Result<McEstimate> {
    if cfg.threshold.is_none() {
        return Err(Error::Config("simulate_killed needs a finite threshold".into()));
    }
    simulate("simulate_killed", cfg, exec)
}

/// Simulate the unrestricted process; `cfg.threshold` must be `None`.
pub fn simulate_unrestricted(cfg: &McConfig) -> Result<McEstimate> {
    simulate_unrestricted_with(cfg, Execution::default())
}

pub fn simulate_unrestricted_with(cfg: &McConfig, exec: Execution) -> Result<McEstimate> {
    if cfg.threshold.is_some() {
        return Err(Error::Config("simulate_unrestricted needs threshold = None".into()));
    }
    simulate("simulate_unrestricted", cfg, exec)
}
