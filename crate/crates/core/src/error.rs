use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes shared by every module.
///
/// Variants split into two families: configuration/domain problems
/// (bad inputs, a bound used outside its validity range) and numeric
/// failures (non-convergence, degenerate simulation). The CLI maps the
/// first family to exit code 1 and the second to exit code 2.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{op}: domain error: {detail}")]
    Domain { op: &'static str, detail: String },

    #[error("{op}: {requirement} does not hold for A = {threshold}")]
    Regime {
        op: &'static str,
        requirement: &'static str,
        threshold: f64,
    },

    #[error("{op}: quadrature did not converge (estimate {estimate:e}, error estimate {err_est:e})")]
    Accuracy {
        op: &'static str,
        estimate: f64,
        err_est: f64,
    },

    #[error("{op}: no sign change on [{lo}, {hi}] (f(lo) = {f_lo:e}, f(hi) = {f_hi:e})")]
    Bracket {
        op: &'static str,
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("{op}: no convergence after {iterations} iterations, last bracket [{lo}, {hi}]")]
    Convergence {
        op: &'static str,
        iterations: usize,
        lo: f64,
        hi: f64,
    },

    #[error("solve_lambda: eigenvalue equation has no sign change for A = {threshold} even after widening the bracket to [{lo}, {hi}] (g = {g_lo:e}, {g_hi:e})")]
    Eigen {
        threshold: f64,
        lo: f64,
        hi: f64,
        g_lo: f64,
        g_hi: f64,
    },

    #[error("{op}: no surviving paths out of {n_paths}; use a shorter horizon or more paths")]
    Degenerate { op: &'static str, n_paths: usize },

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            op,
            detail: detail.into(),
        }
    }

    /// True for non-convergence style failures, false for bad inputs.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::Accuracy { .. }
                | Error::Bracket { .. }
                | Error::Convergence { .. }
                | Error::Eigen { .. }
                | Error::Degenerate { .. }
        )
    }

    /// Re-tag an error with the name of the operation that surfaced it.
    pub(crate) fn within(self, outer: &'static str) -> Self {
        match self {
            Error::Accuracy {
                estimate, err_est, ..
            } => Error::Accuracy {
                op: outer,
                estimate,
                err_est,
            },
            other => other,
        }
    }
}
