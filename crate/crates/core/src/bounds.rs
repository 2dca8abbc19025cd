//! Analytic lower and upper bounds on `q_A` and `Q_A`, and the sup-gap
//! between `Q_A` and `H`.
//!
//! Every pdf bound has the shape `(c/x²) Q_A(x) · φ(x)`; callers that
//! evaluate several kinds at one point can compute `Q_A(x)` once and use
//! [`pdf_bound_with_cdf`].

use std::fmt;
use std::str::FromStr;

use crate::dist::{qsd_cdf, stationary_cdf};
use crate::eigen::{require_at_least_critical, DomainRequirement, EigenContext};
use crate::error::{Error, Result};
use crate::specfun::{
    exp_integral_e1, exp_integral_e1_scaled, find_root_bracketed, gamma, try_integrate_adaptive,
    upper_incomplete_gamma_scaled, QuadratureSpec, RootSpec,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Lower,
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Pdf,
    Cdf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundKind {
    PdfL1,
    PdfU1,
    PdfL2,
    PdfU2,
    PdfL3,
    PdfU3,
    PdfL4,
    PdfL5,
    PdfL6,
    PdfU6,
    CdfL1,
    CdfL6,
    CdfU1,
    CdfU5,
    CdfU6,
}

impl BoundKind {
    pub const ALL: [BoundKind; 15] = [
        BoundKind::PdfL1,
        BoundKind::PdfU1,
        BoundKind::PdfL2,
        BoundKind::PdfU2,
        BoundKind::PdfL3,
        BoundKind::PdfU3,
        BoundKind::PdfL4,
        BoundKind::PdfL5,
        BoundKind::PdfL6,
        BoundKind::PdfU6,
        BoundKind::CdfL1,
        BoundKind::CdfL6,
        BoundKind::CdfU1,
        BoundKind::CdfU5,
        BoundKind::CdfU6,
    ];

    /// Short name: lowercase for pdf bounds (`l1`), uppercase for cdf
    /// bounds (`U5`).
    pub fn name(self) -> &'static str {
        use BoundKind::*;
        match self {
            PdfL1 => "l1",
            PdfU1 => "u1",
            PdfL2 => "l2",
            PdfU2 => "u2",
            PdfL3 => "l3",
            PdfU3 => "u3",
            PdfL4 => "l4",
            PdfL5 => "l5",
            PdfL6 => "l6",
            PdfU6 => "u6",
            CdfL1 => "L1",
            CdfL6 => "L6",
            CdfU1 => "U1",
            CdfU5 => "U5",
            CdfU6 => "U6",
        }
    }

    pub fn side(self) -> Side {
        use BoundKind::*;
        match self {
            PdfL1 | PdfL2 | PdfL3 | PdfL4 | PdfL5 | PdfL6 | CdfL1 | CdfL6 => Side::Lower,
            _ => Side::Upper,
        }
    }

    pub fn target(self) -> Target {
        use BoundKind::*;
        match self {
            CdfL1 | CdfL6 | CdfU1 | CdfU5 | CdfU6 => Target::Cdf,
            _ => Target::Pdf,
        }
    }

    pub fn domain(self) -> DomainRequirement {
        use BoundKind::*;
        match self {
            PdfL3 | PdfU3 | PdfL5 | CdfU5 | CdfU6 => DomainRequirement::AtLeastCritical,
            PdfL4 => DomainRequirement::AboveCritical,
            _ => DomainRequirement::AnyThreshold,
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoundKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown bound {s:?}")))
    }
}

fn check_x(op: &'static str, ctx: &EigenContext, x: f64) -> Result<()> {
    if !(x >= 0.0 && x <= ctx.threshold()) {
        return Err(Error::domain(op, format!("x must lie in [0, A], got {x}")));
    }
    Ok(())
}

fn check_kind(op: &'static str, kind: BoundKind, target: Target, ctx: &EigenContext) -> Result<()> {
    if kind.target() != target {
        return Err(Error::domain(op, format!("{kind} is not a {target:?} bound")));
    }
    ctx.require(op, kind.domain())
}

/// Value of a pdf bound at `x ∈ [0, A]`.
pub fn pdf_bound(kind: BoundKind, ctx: &EigenContext, x: f64, quad: &QuadratureSpec) -> Result<f64> {
    check_x("pdf_bound", ctx, x)?;
    let q = qsd_cdf(ctx, x)?;
    pdf_bound_with_cdf(kind, ctx, x, q, quad)
}

/// Same as [`pdf_bound`] but reusing a precomputed `Q_A(x)`.
pub fn pdf_bound_with_cdf(
    kind: BoundKind,
    ctx: &EigenContext,
    x: f64,
    q_cdf: f64,
    quad: &QuadratureSpec,
) -> Result<f64> {
    check_x("pdf_bound", ctx, x)?;
    check_kind("pdf_bound", kind, Target::Pdf, ctx)?;
    let (a, l) = (ctx.threshold(), ctx.lambda());
    let xi = || ctx.xi().unwrap_or(0.0);
    // l2 and u2 carry a Q-free term, so they do not vanish with Q.
    if x == 0.0 {
        return Ok(0.0);
    }
    let c = 2.0 / (x * x);
    use BoundKind::*;
    let v = match kind {
        PdfL1 => c * q_cdf * (1.0 - l * x),
        PdfU1 => c * q_cdf,
        PdfL2 => c * (q_cdf * (1.0 + l * a - l * x) - 1.0),
        PdfU2 => c * (q_cdf + l * a - 1.0 - l * x),
        PdfL3 => c * q_cdf * (3.0 + xi()) / 4.0 * (a - x) / (a + 1.0),
        PdfU3 => c * q_cdf * (1.0 - xi()) / 2.0 * (a - x),
        PdfL4 => q_cdf / (x * x) * (1.0 + xi() - 0.5 * x * (1.0 - xi())),
        PdfL5 => c * q_cdf * (1.0 - x / a),
        PdfU6 => {
            if q_cdf == 0.0 {
                return Ok(0.0);
            }
            let t = 2.0 / x;
            c * q_cdf * (1.0 - l * (x - 2.0 * exp_integral_e1_scaled(t)?))
        }
        PdfL6 => {
            if q_cdf == 0.0 {
                return Ok(0.0);
            }
            let t = 2.0 / x;
            // e^t (x/2)^{2/A} Γ(-1 + 2/A, t) = t⁻¹ · e^t t^{-b} Γ(b, t), b = -1 + 2/A
            let g = upper_incomplete_gamma_scaled(-1.0 + 2.0 / a, t, quad).map_err(|e| e.within("pdf_bound"))? / t;
            c * q_cdf * (1.0 - 2.0 * l * g)
        }
        _ => unreachable!("checked by check_kind"),
    };
    Ok(v)
}

/// Value of a cdf bound at `x ∈ [0, A]`. `U6` uses the log-kernel form.
pub fn cdf_bound(kind: BoundKind, ctx: &EigenContext, x: f64, quad: &QuadratureSpec) -> Result<f64> {
    check_x("cdf_bound", ctx, x)?;
    check_kind("cdf_bound", kind, Target::Cdf, ctx)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    let (a, l) = (ctx.threshold(), ctx.lambda());
    // All five are e^{2/A} H(x) e^{extra}.
    let base = 2.0 / a - 2.0 / x;
    use BoundKind::*;
    let extra = match kind {
        CdfL1 => 0.0,
        CdfU1 => 2.0 * l * (a / x).ln(),
        CdfU5 => 2.0 / a * (a / x).ln(),
        CdfL6 => 2.0 * l * (exp_integral_e1_scaled(2.0 / a)? - exp_integral_e1_scaled(2.0 / x)?),
        CdfU6 => 2.0 * l * u6_exponent_log_kernel(a, x, quad)?,
        _ => unreachable!("checked by check_kind"),
    };
    Ok((base + extra).exp())
}

/// `U6(x)` evaluated through both integral kernels: `(log kernel, (1+y) kernel)`.
pub fn cdf_bound_u6_forms(ctx: &EigenContext, x: f64, quad: &QuadratureSpec) -> Result<(f64, f64)> {
    check_x("cdf_bound_u6_forms", ctx, x)?;
    ctx.require("cdf_bound_u6_forms", BoundKind::CdfU6.domain())?;
    if x == 0.0 {
        return Ok((0.0, 0.0));
    }
    let (a, l) = (ctx.threshold(), ctx.lambda());
    let base = 2.0 / a - 2.0 / x;
    let log_form = (base + 2.0 * l * u6_exponent_log_kernel(a, x, quad)?).exp();
    let y_form = (base + 2.0 * l * u6_exponent_e1_kernel(a, x, quad)?).exp();
    Ok((log_form, y_form))
}

// (1/Γ(2 - 2/A)) ∫₀^∞ log((1 + Ay/2)/(1 + xy/2)) e^{-y} y^{-2/A} dy
fn u6_exponent_log_kernel(a: f64, x: f64, quad: &QuadratureSpec) -> Result<f64> {
    if x >= a {
        return Ok(0.0);
    }
    let p = 2.0 / a;
    let f = |y: f64| Ok(((0.5 * a * y).ln_1p() - (0.5 * x * y).ln_1p()) * (-y - p * y.ln()).exp());
    let r = try_integrate_adaptive(f, 0.0, f64::INFINITY, quad).map_err(|e| e.within("cdf_bound"))?;
    Ok(r.value / gamma(2.0 - p))
}

// ∫₀^∞ [E1(2y/A) - E1(2y/x)] (1 + y)^{2/A - 2} dy
fn u6_exponent_e1_kernel(a: f64, x: f64, quad: &QuadratureSpec) -> Result<f64> {
    if x >= a {
        return Ok(0.0);
    }
    let p = 2.0 / a;
    let f = |y: f64| -> Result<f64> {
        let d = exp_integral_e1(p * y)? - exp_integral_e1(2.0 * y / x)?;
        Ok(d * (1.0 + y).powf(p - 2.0))
    };
    let r = try_integrate_adaptive(f, 0.0, f64::INFINITY, quad).map_err(|e| e.within("cdf_bound"))?;
    Ok(r.value)
}

fn xstar_equation(a: f64, x: f64) -> f64 {
    // log of e^{2/A} (A/x)^{2/A} (1 - x/A)
    2.0 / a * (1.0 + (a / x).ln()) + (-x / a).ln_1p()
}

/// Unique root `x* ∈ (0, A)` of `e^{2/A} (A/x)^{2/A} (1 - x/A) = 1`.
pub fn gap_xstar(a: f64, root: &RootSpec) -> Result<f64> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::domain("gap_xstar", format!("threshold must be positive and finite, got {a}")));
    }
    require_at_least_critical("gap_xstar", a)?;
    find_root_bracketed(|x| xstar_equation(a, x), a * 1e-9, a * (1.0 - 1e-12), root)
        .map_err(|e| e.within("gap_xstar"))
}

/// Elementary upper bound `2 log A + 1/log A` on `x*`.
pub fn gap_xstar_upper(a: f64) -> Result<f64> {
    if !(a > 1.0) || !a.is_finite() {
        return Err(Error::domain("gap_xstar_upper", format!("need A > 1, got {a}")));
    }
    let l = a.ln();
    Ok(2.0 * l + 1.0 / l)
}

/// `x*/(A - x*)`, the sharper of the two sup-gap bounds.
pub fn gap_sup_bound_exact(a: f64, root: &RootSpec) -> Result<f64> {
    let x = gap_xstar(a, root)?;
    Ok(x / (a - x))
}

/// Elementary bound on `sup (Q_A - H)`:
/// `(2 log A + 1/log A) / (A - 2 log A - 1/log A)`.
pub fn gap_sup_bound(a: f64) -> Result<f64> {
    require_at_least_critical("gap_sup_bound", a)?;
    let b = gap_xstar_upper(a)?;
    Ok(b / (a - b))
}

/// `Q_A(x) - H(x)`.
pub fn gap_at(ctx: &EigenContext, x: f64) -> Result<f64> {
    Ok(qsd_cdf(ctx, x)? - stationary_cdf(x))
}
