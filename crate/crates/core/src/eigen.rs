//! Principal eigenvalue `λ_A` and analytic bounds on it.
//!
//! `λ_A` is the smallest positive root of `W_{1,ξ(λ)/2}(2/A) = 0` with
//! `ξ(λ)² = 1 - 8λ`. The root always lies strictly inside
//!
//! ```text
//! 1/A + 1/(A(1+A))  <  λ_A  <  1/A + (1 + √(4A+1)) / (2A²)
//! ```
//!
//! and the solver searches that bracket only.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::specfun::{
    bessel_k_scaled, exp_integral_e1_scaled, find_root_bracketed, upper_incomplete_gamma, w1_brace_scaled,
    OrderSquared, QuadratureSpec, RootSpec,
};

/// `|s|` below this is snapped to zero so that `λ = 1/8` lands in the
/// real-order regime.
const S_SNAP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `A < Ã`: `ξ` is purely imaginary.
    ImaginaryOrder,
    /// `A ≥ Ã`: `ξ ∈ [0, 1)`.
    RealOrder,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::ImaginaryOrder => "imaginary-order",
            Regime::RealOrder => "real-order",
        }
    }
}

/// Threshold condition a bound or formula needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainRequirement {
    AnyThreshold,
    /// `A ≥ Ã`, i.e. `ξ` real.
    AtLeastCritical,
    /// `A > Ã`, i.e. `ξ > 0`.
    AboveCritical,
}

impl DomainRequirement {
    pub fn describe(self) -> &'static str {
        match self {
            DomainRequirement::AnyThreshold => "A > 0",
            DomainRequirement::AtLeastCritical => "A >= critical threshold",
            DomainRequirement::AboveCritical => "A > critical threshold",
        }
    }
}

/// Solved eigenproblem for one threshold. Immutable; every downstream
/// computation borrows it.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenContext {
    threshold: f64,
    lambda: f64,
    order: OrderSquared,
    residual: f64,
    regime: Regime,
    k_at_threshold: f64,
    quad: QuadratureSpec,
}

impl EigenContext {
    /// Absorbing level `A`.
    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `s = ξ²/4 = (1 - 8λ)/4`.
    pub fn order(&self) -> OrderSquared {
        self.order
    }

    /// Eigen-equation value at `λ`, normalized by its magnitude at the
    /// bracket endpoints.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// `ξ = √(1 - 8λ)` in the real-order regime.
    pub fn xi(&self) -> Option<f64> {
        self.order.real_order().map(|b| 2.0 * b)
    }

    /// `e^{1/A} K_{ξ/2}(1/A)`, the normalizer of `Q_A`.
    pub fn k_at_threshold_scaled(&self) -> f64 {
        self.k_at_threshold
    }

    /// Quadrature tolerances used for Bessel evaluations downstream.
    pub fn quad(&self) -> &QuadratureSpec {
        &self.quad
    }

    pub fn satisfies(&self, req: DomainRequirement) -> bool {
        let s = self.order.value();
        match req {
            DomainRequirement::AnyThreshold => true,
            DomainRequirement::AtLeastCritical => s >= 0.0,
            DomainRequirement::AboveCritical => s > 0.0,
        }
    }

    pub fn require(&self, op: &'static str, req: DomainRequirement) -> Result<()> {
        if self.satisfies(req) {
            Ok(())
        } else {
            Err(Error::Regime {
                op,
                requirement: req.describe(),
                threshold: self.threshold,
            })
        }
    }
}

fn check_threshold(op: &'static str, a: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::domain(op, format!("threshold A must be positive and finite, got {a}")));
    }
    Ok(())
}

fn order_of(lambda: f64) -> Result<OrderSquared> {
    OrderSquared::new((1.0 - 8.0 * lambda) / 4.0)
}

/// Classic double inequality for `λ_A`.
pub fn lambda_bracket_classic(a: f64) -> Result<(f64, f64)> {
    check_threshold("lambda_bracket_classic", a)?;
    let lower = 1.0 / a + 1.0 / (a * (1.0 + a));
    let upper = 1.0 / a + (1.0 + (4.0 * a + 1.0).sqrt()) / (2.0 * a * a);
    Ok((lower, upper))
}

/// Locate `λ_A` and build the context.
///
/// Falls back to a bracket widened by 10% on each side if the eigen-equation
/// has no sign change on the classic one.
pub fn solve_lambda(a: f64, root: &RootSpec, quad: &QuadratureSpec) -> Result<EigenContext> {
    check_threshold("solve_lambda", a)?;
    root.validate()?;
    quad.validate()?;
    let g = |lambda: f64| -> Result<f64> { w1_brace_scaled(order_of(lambda)?, a, quad) };

    let (mut lo, mut hi) = lambda_bracket_classic(a)?;
    let (mut g_lo, mut g_hi) = (g(lo)?, g(hi)?);
    if g_lo.signum() == g_hi.signum() {
        lo *= 0.9;
        hi *= 1.1;
        g_lo = g(lo)?;
        g_hi = g(hi)?;
        if g_lo.signum() == g_hi.signum() {
            return Err(Error::Eigen {
                threshold: a,
                lo,
                hi,
                g_lo,
                g_hi,
            });
        }
    }
    let scale = g_lo.abs().max(g_hi.abs());

    // Brent needs an infallible closure; stash the first failure.
    let brent = |spec: &RootSpec| -> Result<f64> {
        let mut failure = None;
        let lambda = find_root_bracketed(
            |l| match g(l) {
                Ok(v) => v / scale,
                Err(e) => {
                    failure.get_or_insert(e);
                    f64::NAN
                }
            },
            lo,
            hi,
            spec,
        );
        match failure {
            Some(e) => Err(e),
            None => lambda,
        }
    };
    let mut lambda = brent(root)?;
    let mut residual = g(lambda)? / scale;
    if residual.abs() > root.f_tol {
        // Stopped on x_tol first; push to machine resolution in λ.
        lambda = brent(&RootSpec {
            x_tol: f64::EPSILON,
            ..*root
        })?;
        residual = g(lambda)? / scale;
    }

    let mut s = (1.0 - 8.0 * lambda) / 4.0;
    if s.abs() < S_SNAP {
        s = 0.0;
    }
    let order = OrderSquared::new(s)?;
    let regime = if order.is_real_order() {
        Regime::RealOrder
    } else {
        Regime::ImaginaryOrder
    };
    let k_at_threshold = bessel_k_scaled(order, 1.0 / a, quad)?;

    Ok(EigenContext {
        threshold: a,
        lambda,
        order,
        residual,
        regime,
        k_at_threshold,
        quad: *quad,
    })
}

pub fn solve_lambda_default(a: f64) -> Result<EigenContext> {
    solve_lambda(a, &RootSpec::default(), &QuadratureSpec::default())
}

/// Critical threshold `Ã`: root of `W_{1,0}(2/Ã) = 0`, where `λ_Ã = 1/8`.
///
/// Solved once on `[9, 12]` with default tolerances and cached.
pub fn critical_threshold() -> Result<f64> {
    static CACHE: OnceLock<Result<f64>> = OnceLock::new();
    CACHE
        .get_or_init(|| {
            let quad = QuadratureSpec::default();
            let zero = OrderSquared::new(0.0)?;
            let spec = RootSpec {
                x_tol: 1e-14,
                f_tol: 0.0,
                ..RootSpec::default()
            };
            let mut failure = None;
            let root = find_root_bracketed(
                |a| match w1_brace_scaled(zero, a, &quad) {
                    Ok(v) => v,
                    Err(e) => {
                        failure.get_or_insert(e);
                        f64::NAN
                    }
                },
                9.0,
                12.0,
                &spec,
            );
            match failure {
                Some(e) => Err(e),
                None => root,
            }
        })
        .clone()
}

pub(crate) fn require_at_least_critical(op: &'static str, a: f64) -> Result<()> {
    let critical = critical_threshold()?;
    if a < critical {
        return Err(Error::Regime {
            op,
            requirement: DomainRequirement::AtLeastCritical.describe(),
            threshold: a,
        });
    }
    Ok(())
}

/// `½ (2/A)^{2/A} e^{-2/A} / Γ(-1 + 2/A, 2/A)`, from integrating the
/// `U⁽⁵⁾` cdf bound.
pub fn lambda_lower_gamma(a: f64, quad: &QuadratureSpec) -> Result<f64> {
    check_threshold("lambda_lower_gamma", a)?;
    let z = 2.0 / a;
    let g = upper_incomplete_gamma(-1.0 + z, z, quad).map_err(|e| e.within("lambda_lower_gamma"))?;
    Ok(0.5 * z.powf(z) * (-z).exp() / g)
}

/// `1/A + 1/A²`.
pub fn lambda_lower_simple(a: f64) -> Result<f64> {
    check_threshold("lambda_lower_simple", a)?;
    Ok(1.0 / a + 1.0 / (a * a))
}

/// `(1 + √(1 + 8/A)) / (2A)`, valid for `A ≥ Ã`.
pub fn lambda_lower_moment(a: f64) -> Result<f64> {
    check_threshold("lambda_lower_moment", a)?;
    require_at_least_critical("lambda_lower_moment", a)?;
    Ok((1.0 + (1.0 + 8.0 / a).sqrt()) / (2.0 * a))
}

/// `(1/A) {1 - (2/A) e^{2/A} E1(2/A)}^{-1}`, from `u⁽⁶⁾(A) ≥ q_A(A) = 0`.
pub fn lambda_upper_e1(a: f64) -> Result<f64> {
    check_threshold("lambda_upper_e1", a)?;
    let z = 2.0 / a;
    let denom = 1.0 - z * exp_integral_e1_scaled(z)?;
    if !(denom > 0.0) {
        return Err(Error::domain(
            "lambda_upper_e1",
            format!("bound not applicable: denominator {denom:e} <= 0 at A = {a}"),
        ));
    }
    Ok(1.0 / (a * denom))
}
