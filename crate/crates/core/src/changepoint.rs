//! Worst-case average detection delay (SADD) of the randomized
//! Shiryaev–Roberts–Pollak procedure, whose headstart is drawn from `Q_A`.
//!
//! Writing `φ(t) = e^{2/t} E1(2/t)`,
//!
//! ```text
//! SADD = 2 { φ(A) - ∫₀^A φ(t) q_A(t) dt }
//!      = 2 { φ(A) - 1 + 2λ ∫₀^A φ(t) Q_A(t) / t dt }
//! ```

use crate::dist::{qsd_cdf, qsd_pdf, Representation};
use crate::eigen::{DomainRequirement, EigenContext};
use crate::error::Result;
use crate::specfun::{exp_integral_e1_scaled, try_integrate_adaptive, upper_incomplete_gamma_scaled, QuadratureSpec};

/// Split point of the exact-form integrals, as a fraction of `A`.
const SPLIT: f64 = 1e-2;
/// Left end of the exact-form integrals, as a fraction of `A`.
const LEFT_EPS: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct SaddResult {
    pub threshold: f64,
    pub lambda: f64,
    /// pdf form.
    pub sadd_exact: f64,
    /// cdf form of the same quantity.
    pub sadd_exact_cdf_form: f64,
    /// `None` when `A` is outside the bound's domain.
    pub bound_gamma: Option<f64>,
    pub bound_simple: Option<f64>,
    pub bound_l5: Option<f64>,
    pub quadrature_err: f64,
}

fn phi(t: f64) -> Result<f64> {
    exp_integral_e1_scaled(2.0 / t)
}

fn split_integral<F>(ctx: &EigenContext, f: F, quad: &QuadratureSpec) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64> + Copy,
{
    let a = ctx.threshold();
    let (eps, mid) = (LEFT_EPS * a, SPLIT * a);
    let left = try_integrate_adaptive(f, eps, mid, quad)?;
    let right = try_integrate_adaptive(f, mid, a, quad)?;
    Ok((left.value + right.value, left.err_est + right.err_est))
}

/// Exact SADD from the pdf form, with its quadrature error estimate.
///
/// The skipped piece on `(0, 10⁻⁶A)` is at most `(ε/2) Q_A(ε)` because
/// `φ(t) < t/2`; it is added to the error estimate.
pub fn sadd_exact_with_err(ctx: &EigenContext, quad: &QuadratureSpec) -> Result<(f64, f64)> {
    let a = ctx.threshold();
    let f = |t: f64| Ok(phi(t)? * qsd_pdf(ctx, t, Representation::DerivativeForm)?);
    let (int, err) = split_integral(ctx, f, quad).map_err(|e| e.within("sadd_exact"))?;
    let eps = LEFT_EPS * a;
    let rem = 0.5 * eps * qsd_cdf(ctx, eps)?;
    Ok((2.0 * (phi(a)? - int), 2.0 * (err + rem)))
}

pub fn sadd_exact(ctx: &EigenContext, quad: &QuadratureSpec) -> Result<f64> {
    Ok(sadd_exact_with_err(ctx, quad)?.0)
}

/// Exact SADD from the cdf form.
pub fn sadd_exact_cdf_form(ctx: &EigenContext, quad: &QuadratureSpec) -> Result<f64> {
    let a = ctx.threshold();
    let f = |t: f64| Ok(phi(t)? * qsd_cdf(ctx, t)? / t);
    let (int, _) = split_integral(ctx, f, quad).map_err(|e| e.within("sadd_exact_cdf_form"))?;
    Ok(2.0 * (phi(a)? - 1.0 + 2.0 * ctx.lambda() * int))
}

/// `2 {λA (A/2)^{2/A} e^{2/A} Γ(2/A, 2/A) - (λA - 1) e^{2/A} E1(2/A) - 1}`, `A ≥ Ã`.
pub fn sadd_upper_gamma(ctx: &EigenContext, quad: &QuadratureSpec) -> Result<f64> {
    ctx.require("sadd_upper_gamma", DomainRequirement::AtLeastCritical)?;
    let (a, l) = (ctx.threshold(), ctx.lambda());
    let z = 2.0 / a;
    // (A/2)^{2/A} e^{2/A} Γ(2/A, 2/A) is the scaled Γ at a = x = z.
    let g = upper_incomplete_gamma_scaled(z, z, quad).map_err(|e| e.within("sadd_upper_gamma"))?;
    Ok(2.0 * (l * a * g - (l * a - 1.0) * phi(a)? - 1.0))
}

/// `2 (λA - 1) {A/2 - e^{2/A} E1(2/A)}`, `A ≥ Ã`.
pub fn sadd_upper_simple(ctx: &EigenContext) -> Result<f64> {
    ctx.require("sadd_upper_simple", DomainRequirement::AtLeastCritical)?;
    let (a, l) = (ctx.threshold(), ctx.lambda());
    Ok(2.0 * (l * a - 1.0) * (0.5 * a - phi(a)?))
}

/// `2 {e^{2/A} E1(2/A) - 1 + (2λ/(λA - 1)) e^{2/A} E1(2/A)}`, `A ≥ Ã`.
pub fn sadd_upper_l5(ctx: &EigenContext) -> Result<f64> {
    ctx.require("sadd_upper_l5", DomainRequirement::AtLeastCritical)?;
    let (a, l) = (ctx.threshold(), ctx.lambda());
    let p = phi(a)?;
    Ok(2.0 * (p - 1.0 + 2.0 * l / (l * a - 1.0) * p))
}

fn optional(r: Result<f64>) -> Result<Option<f64>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(crate::Error::Regime { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Exact SADD in both forms plus whichever bounds apply at this `A`.
pub fn sadd_report(ctx: &EigenContext, quad: &QuadratureSpec) -> Result<SaddResult> {
    let (exact, err) = sadd_exact_with_err(ctx, quad)?;
    Ok(SaddResult {
        threshold: ctx.threshold(),
        lambda: ctx.lambda(),
        sadd_exact: exact,
        sadd_exact_cdf_form: sadd_exact_cdf_form(ctx, quad)?,
        bound_gamma: optional(sadd_upper_gamma(ctx, quad))?,
        bound_simple: optional(sadd_upper_simple(ctx))?,
        bound_l5: optional(sadd_upper_l5(ctx))?,
        quadrature_err: err,
    })
}
