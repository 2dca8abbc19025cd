//! Stationary law `H`, `h` and quasi-stationary law `Q_A`, `q_A`.
//!
//! With `ν² = s` taken from the context and `Ks(u) = eᵘ K_ν(u)`,
//!
//! ```text
//! Q_A(x) = √(A/x) exp(2/A - 2/x) Ks(1/x) / Ks(1/A),   0 < x < A
//! ```
//!
//! and `q_A = dQ_A/dx` has three equivalent Bessel forms (see
//! [`Representation`]).

use crate::eigen::{DomainRequirement, EigenContext};
use crate::error::{Error, Result};
use crate::specfun::{
    bessel_k_dx_neg_scaled, bessel_k_scaled, try_integrate_adaptive, Integral, OrderSquared, QuadratureSpec,
};

/// Past this exponent `e^{-(2/x - 2/A)}` underflows and `Q_A`, `q_A` are 0.
const UNDERFLOW_EXPONENT: f64 = 745.0;

/// Left endpoint of normalization integrals, as a fraction of `A`.
const LEFT_EPS: f64 = 1e-6;

/// `H(x) = e^{-2/x}` for `x > 0`, else 0.
pub fn stationary_cdf(x: f64) -> f64 {
    if x > 0.0 {
        (-2.0 / x).exp()
    } else {
        0.0
    }
}

/// `h(x) = (2/x²) e^{-2/x}` for `x > 0`, else 0.
pub fn stationary_pdf(x: f64) -> f64 {
    if x > 0.0 {
        2.0 / (x * x) * (-2.0 / x).exp()
    } else {
        0.0
    }
}

fn check_x(op: &'static str, x: f64) -> Result<()> {
    if x.is_nan() {
        return Err(Error::domain(op, "x is NaN"));
    }
    Ok(())
}

// ln of the non-Bessel factor √(A/x) e^{2/A - 2/x}; None when it underflows.
fn log_prefactor(ctx: &EigenContext, x: f64) -> Option<f64> {
    let a = ctx.threshold();
    let e = 2.0 / x - 2.0 / a;
    (e <= UNDERFLOW_EXPONENT).then(|| 0.5 * (a / x).ln() - e)
}

/// `Q_A(x)`: 0 for `x ≤ 0`, 1 for `x ≥ A`.
pub fn qsd_cdf(ctx: &EigenContext, x: f64) -> Result<f64> {
    check_x("qsd_cdf", x)?;
    if x <= 0.0 {
        return Ok(0.0);
    }
    if x >= ctx.threshold() {
        return Ok(1.0);
    }
    let Some(lp) = log_prefactor(ctx, x) else {
        return Ok(0.0);
    };
    let k = bessel_k_scaled(ctx.order(), 1.0 / x, ctx.quad())?;
    Ok(lp.exp() * k / ctx.k_at_threshold_scaled())
}

/// Which closed form of `q_A` to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    /// `(Q/x²) [1 - x/2 - K'_ν(1/x)/K_ν(1/x)]`. Works in both regimes.
    DerivativeForm,
    /// `(Q/x²) [1 - (x/2)(1-ξ) + K_{ν-1}(1/x)/K_ν(1/x)]`. Real order only.
    KMinusForm,
    /// `(Q/x²) [1 - (x/2)(1+ξ) + K_{ν+1}(1/x)/K_ν(1/x)]`. Real order only.
    KPlusForm,
}

impl Representation {
    pub const ALL: [Representation; 3] = [
        Representation::DerivativeForm,
        Representation::KMinusForm,
        Representation::KPlusForm,
    ];
}

/// `q_A(x)`; 0 outside `(0, A]`.
pub fn qsd_pdf(ctx: &EigenContext, x: f64, rep: Representation) -> Result<f64> {
    check_x("qsd_pdf", x)?;
    let a = ctx.threshold();
    if rep != Representation::DerivativeForm {
        ctx.require("qsd_pdf", DomainRequirement::AtLeastCritical)?;
    }
    if x <= 0.0 || x > a {
        return Ok(0.0);
    }
    let Some(lp) = log_prefactor(ctx, x) else {
        return Ok(0.0);
    };
    let quad = ctx.quad();
    let u = 1.0 / x;
    let k = bessel_k_scaled(ctx.order(), u, quad)?;
    let q_cdf = lp.exp() * k / ctx.k_at_threshold_scaled();
    let brace = match rep {
        Representation::DerivativeForm => {
            (1.0 - 0.5 * x) + bessel_k_dx_neg_scaled(ctx.order(), u, quad)? / k
        }
        Representation::KMinusForm | Representation::KPlusForm => {
            let sign = if rep == Representation::KPlusForm { 1.0 } else { -1.0 };
            let nu = ctx.order().real_order().unwrap_or(0.0);
            let xi = 2.0 * nu;
            let shifted = bessel_k_scaled(OrderSquared::from_real_order(nu + sign)?, u, quad)?;
            1.0 - 0.5 * x * (1.0 + sign * xi) + shifted / k
        }
    };
    Ok(q_cdf * brace / (x * x))
}

/// `∫₀^x Q_A(t) dt` for `x ∈ (0, A]`.
///
/// Quadrature starts at `ε = 10⁻⁶ A`; since `Q_A` is increasing, the
/// skipped piece is at most `ε Q_A(ε)`, which is folded into `err_est`.
pub fn integral_of_cdf(ctx: &EigenContext, x: f64, quad: &QuadratureSpec) -> Result<Integral> {
    let a = ctx.threshold();
    if !(x > 0.0 && x <= a) {
        return Err(Error::domain("integral_of_cdf", format!("need 0 < x <= A, got {x}")));
    }
    let eps = LEFT_EPS * a;
    if x <= eps {
        return Ok(Integral {
            value: 0.0,
            err_est: x * qsd_cdf(ctx, x)?,
        });
    }
    let body = try_integrate_adaptive(|t| qsd_cdf(ctx, t), eps, x, quad).map_err(|e| e.within("integral_of_cdf"))?;
    Ok(Integral {
        value: body.value,
        err_est: body.err_est + eps * qsd_cdf(ctx, eps)?,
    })
}

/// `∫₀^A q_A`: exactly `Q_A(ε)` on `(0, ε)` plus quadrature on `(ε, A)`.
pub fn pdf_mass(ctx: &EigenContext, quad: &QuadratureSpec) -> Result<Integral> {
    let a = ctx.threshold();
    let eps = LEFT_EPS * a;
    let body = try_integrate_adaptive(|t| qsd_pdf(ctx, t, Representation::DerivativeForm), eps, a, quad)
        .map_err(|e| e.within("pdf_mass"))?;
    Ok(Integral {
        value: body.value + qsd_cdf(ctx, eps)?,
        err_est: body.err_est,
    })
}

/// Forward-equation form `q_A(x) = (2/x²) {Q_A(x) - λ ∫₀^x Q_A}`.
pub fn qsd_pdf_forward_form(ctx: &EigenContext, x: f64, quad: &QuadratureSpec) -> Result<f64> {
    check_x("qsd_pdf_forward_form", x)?;
    if x <= 0.0 || x > ctx.threshold() {
        return Ok(0.0);
    }
    let int = integral_of_cdf(ctx, x, quad)?;
    Ok(2.0 / (x * x) * (qsd_cdf(ctx, x)? - ctx.lambda() * int.value))
}

/// Complementary forward form `q_A(x) = (2/x²) {Q_A(x) - 1 + λ ∫ₓ^A Q_A}`.
pub fn qsd_pdf_forward_form_complement(ctx: &EigenContext, x: f64, quad: &QuadratureSpec) -> Result<f64> {
    check_x("qsd_pdf_forward_form_complement", x)?;
    let a = ctx.threshold();
    if x <= 0.0 || x > a {
        return Ok(0.0);
    }
    let tail = if x < a {
        try_integrate_adaptive(|t| qsd_cdf(ctx, t), x, a, quad)
            .map_err(|e| e.within("qsd_pdf_forward_form_complement"))?
            .value
    } else {
        0.0
    };
    Ok(2.0 / (x * x) * (qsd_cdf(ctx, x)? - 1.0 + ctx.lambda() * tail))
}

/// `∫₀^A x² q_A(x) dx = (λ²A² - 2λA + 2) / (λ + λ²)`.
pub fn qsd_second_moment(ctx: &EigenContext) -> f64 {
    let l = ctx.lambda();
    let a = ctx.threshold();
    (l * l * a * a - 2.0 * l * a + 2.0) / (l + l * l)
}

/// Both sides of `∫₀^A Q_A = 1/λ_A`: `(quadrature, 1/λ)`.
pub fn identity_int_cdf(ctx: &EigenContext, quad: &QuadratureSpec) -> Result<(f64, f64)> {
    let lhs = integral_of_cdf(ctx, ctx.threshold(), quad)?.value;
    Ok((lhs, 1.0 / ctx.lambda()))
}
