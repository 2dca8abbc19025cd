//! Evaluation grids on `(0, A]`.

use crate::error::{Error, Result};
use crate::exec::Execution;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridKind {
    /// `A i / n`, `i = 1..=n`.
    Linear,
    /// Log-spaced from just above `lower_fraction · A` up to `A`.
    Log,
}

impl std::str::FromStr for GridKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(GridKind::Linear),
            "log" => Ok(GridKind::Log),
            _ => Err(Error::Config(format!("unknown grid kind {s:?} (expected linear or log)"))),
        }
    }
}

/// Default left edge of log grids, as a fraction of `A`.
pub const LOG_GRID_LOWER: f64 = 1e-3;

/// Strictly increasing abscissae in `(0, A]`.
pub fn abscissae(a: f64, n: usize, kind: GridKind) -> Result<Vec<f64>> {
    abscissae_from(a, n, kind, LOG_GRID_LOWER)
}

/// Like [`abscissae`], with an explicit left fraction for log grids. The
/// left edge itself is excluded.
pub fn abscissae_from(a: f64, n: usize, kind: GridKind, lower_fraction: f64) -> Result<Vec<f64>> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::domain("grid", format!("threshold must be positive and finite, got {a}")));
    }
    if n < 2 {
        return Err(Error::Config(format!("grid needs at least 2 points, got {n}")));
    }
    if !(lower_fraction > 0.0 && lower_fraction < 1.0) {
        return Err(Error::Config(format!("log grid fraction must be in (0, 1), got {lower_fraction}")));
    }
    let nf = n as f64;
    let xs = match kind {
        GridKind::Linear => (1..=n).map(|i| a * i as f64 / nf).collect(),
        GridKind::Log => {
            let l = lower_fraction.ln();
            (1..=n).map(|i| a * (l * (1.0 - i as f64 / nf)).exp()).collect::<Vec<_>>()
        }
    };
    Ok(xs)
}

/// Values tabulated on a grid, with the `λ` used to produce them.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalGrid {
    pub threshold: f64,
    pub xs: Vec<f64>,
    pub values: Vec<f64>,
    pub lambda_used: f64,
}

impl EvalGrid {
    /// Evaluate `f` at every abscissa. Output order follows `xs`
    /// regardless of `exec`.
    pub fn tabulate<F>(threshold: f64, lambda_used: f64, xs: Vec<f64>, exec: Execution, f: F) -> Result<Self>
    where
        F: Fn(f64) -> Result<f64> + Sync + Send,
    {
        if xs.is_empty() || xs[0] <= 0.0 || *xs.last().unwrap() > threshold || xs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::domain(
                "EvalGrid",
                "abscissae must be strictly increasing in (0, A]",
            ));
        }
        let values = exec.try_map_slice(&xs, |&x| f(x))?;
        Ok(Self {
            threshold,
            xs,
            values,
            lambda_used,
        })
    }
}
