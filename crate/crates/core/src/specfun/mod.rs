//! Special-function and numerical substrate: Bessel K of real or imaginary
//! order, exponential integral, incomplete Gamma, Whittaker W reduced to
//! Bessel K, adaptive quadrature and bracketed root finding.

mod bessel;
mod gamma;
mod quad;
mod roots;
mod whittaker;

pub use bessel::{bessel_k, bessel_k_dx, bessel_k_dx_neg_scaled, bessel_k_scaled, OrderSquared, MAX_ORDER_SQUARED};
pub use gamma::{exp_integral_e1, exp_integral_e1_scaled, gamma, upper_incomplete_gamma, upper_incomplete_gamma_scaled};
pub use quad::{integrate_adaptive, try_integrate_adaptive, Integral, QuadratureSpec};
pub use roots::{find_root_bracketed, RootSpec};
pub use whittaker::{whittaker_w0, whittaker_w1, whittaker_w1_k_minus, whittaker_w1_k_plus};
pub(crate) use whittaker::w1_brace_scaled;
