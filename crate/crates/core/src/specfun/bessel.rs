//! Modified Bessel function of the second kind, `K_ν(x)`, for real or purely
//! imaginary order.
//!
//! Evaluated from
//!
//! ```text
//! K_ν(x) = ∫₀^∞ exp(-x cosh t) c(t) dt,   c(t) = cosh(√s t)   (s ≥ 0)
//!                                          c(t) = cos(√(-s) t)  (s < 0)
//! ```
//!
//! where `s = ν²`. Only `s` enters, so the function is even in `ν` by
//! construction and the imaginary-order case needs no complex arithmetic.
//! Internally everything is computed in the scaled form `eˣ K_ν(x)`, which
//! keeps ratios such as `K_{ν-1}(x) / K_ν(x)` accurate when `x` is large.

use super::quad::{integrate_adaptive, QuadratureSpec};
use crate::error::{Error, Result};

/// Largest `|s|` accepted. Small thresholds push the eigenvalue search to
/// strongly imaginary orders; past `|s| = 64` the oscillating integrand
/// cancels down to `e^{-4π}` of its own magnitude and accuracy degrades.
pub const MAX_ORDER_SQUARED: f64 = 64.0;

/// Upper truncation point of the `t` integral is capped here.
const T_CAP: f64 = 60.0;

/// Squared Bessel order `s = ν²`; negative `s` encodes `ν = i√(-s)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct OrderSquared(f64);

impl OrderSquared {
    pub fn new(s: f64) -> Result<Self> {
        if !s.is_finite() || s.abs() > MAX_ORDER_SQUARED {
            return Err(Error::domain(
                "OrderSquared",
                format!("order squared must be finite with |s| <= {MAX_ORDER_SQUARED}, got {s}"),
            ));
        }
        Ok(Self(s))
    }

    /// Order squared for a real order `ν`.
    pub fn from_real_order(nu: f64) -> Result<Self> {
        Self::new(nu * nu)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_real_order(self) -> bool {
        self.0 >= 0.0
    }

    /// Nonnegative real order, if the order is real.
    pub fn real_order(self) -> Option<f64> {
        (self.0 >= 0.0).then(|| self.0.sqrt())
    }

    fn weight(self, t: f64) -> f64 {
        if self.0 >= 0.0 {
            (self.0.sqrt() * t).cosh()
        } else {
            ((-self.0).sqrt() * t).cos()
        }
    }
}

fn check_argument(op: &'static str, x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(op, format!("argument must be positive and finite, got {x}")));
    }
    Ok(())
}

/// Truncation point `T` with `x (cosh T - 1) ≥ 745`, beyond which the scaled
/// integrand is below the double-precision underflow threshold.
fn truncation(x: f64) -> f64 {
    (1.0 + 745.0 / x).acosh().min(T_CAP)
}

// cosh t - 1 without cancellation near t = 0.
fn cosh_m1(t: f64) -> f64 {
    let h = (0.5 * t).sinh();
    2.0 * h * h
}

fn scaled_integral(
    op: &'static str,
    order: OrderSquared,
    x: f64,
    with_cosh: bool,
    quad: &QuadratureSpec,
) -> Result<f64> {
    check_argument(op, x)?;
    let upper = truncation(x);
    let f = |t: f64| {
        let base = (-x * cosh_m1(t)).exp() * order.weight(t);
        if with_cosh {
            base * t.cosh()
        } else {
            base
        }
    };
    integrate_adaptive(f, 0.0, upper, quad)
        .map(|r| r.value)
        .map_err(|e| e.within(op))
}

/// `eˣ K_ν(x)`.
pub fn bessel_k_scaled(order: OrderSquared, x: f64, quad: &QuadratureSpec) -> Result<f64> {
    scaled_integral("bessel_k", order, x, false, quad)
}

/// `K_ν(x)`.
pub fn bessel_k(order: OrderSquared, x: f64, quad: &QuadratureSpec) -> Result<f64> {
    Ok(bessel_k_scaled(order, x, quad)? * (-x).exp())
}

/// `-eˣ ∂K_ν(x)/∂x`, i.e. `eˣ ∫ cosh t e^{-x cosh t} c(t) dt`.
pub fn bessel_k_dx_neg_scaled(order: OrderSquared, x: f64, quad: &QuadratureSpec) -> Result<f64> {
    scaled_integral("bessel_k_dx", order, x, true, quad)
}

/// `∂K_ν(x)/∂x`.
pub fn bessel_k_dx(order: OrderSquared, x: f64, quad: &QuadratureSpec) -> Result<f64> {
    Ok(-bessel_k_dx_neg_scaled(order, x, quad)? * (-x).exp())
}
