//! Quasi-stationary distribution of the Shiryaev–Roberts diffusion
//! `dR = dt + R dB` killed at level `A`.
//!
//! The crate computes the principal eigenvalue `λ_A`, the quasi-stationary
//! pdf `q_A` and cdf `Q_A`, a family of analytic lower and upper bounds for
//! both, the sup-gap between `Q_A` and the stationary cdf `H`, and the
//! worst-case detection delay of the randomized Shiryaev–Roberts–Pollak
//! procedure. A Monte Carlo simulator of the killed diffusion serves as an
//! independent check.
//!
//! ```no_run
//! use sr_qsd::{dist, eigen};
//!
//! let ctx = eigen::solve_lambda_default(20.0).unwrap();
//! let q = dist::qsd_cdf(&ctx, 5.0).unwrap();
//! println!("lambda = {}, Q(5) = {q}", ctx.lambda());
//! ```

// Quadrature nodes keep every printed digit; `!(x > 0.0)` rejects NaN on purpose.
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod changepoint;
pub mod dist;
pub mod eigen;
pub mod error;
pub mod exec;
pub mod grid;
pub mod mc;
pub mod specfun;

pub use error::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
