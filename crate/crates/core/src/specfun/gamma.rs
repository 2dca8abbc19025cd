//! Exponential integral `E1` and the upper incomplete Gamma function for
//! real (including negative) first argument.

use super::quad::{integrate_adaptive, QuadratureSpec};
use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_43;

fn check_positive(op: &'static str, x: f64) -> Result<()> {
    if !(x > 0.0) || x.is_nan() {
        return Err(Error::domain(op, format!("argument must be positive, got {x}")));
    }
    Ok(())
}

/// `eˣ E1(x)` for `x > 0`.
///
/// Power series below `x = 1`, modified Lentz continued fraction above.
pub fn exp_integral_e1_scaled(x: f64) -> Result<f64> {
    check_positive("exp_integral_e1", x)?;
    if x.is_infinite() {
        return Ok(0.0);
    }
    if x <= 1.0 {
        return Ok(x.exp() * e1_series(x));
    }
    // E1(x) = e^{-x} / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...)))
    let tiny = 1e-300;
    let mut b = x + 1.0;
    let mut c = 1.0 / tiny;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..500 {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            return Ok(h);
        }
    }
    Err(Error::Convergence {
        op: "exp_integral_e1",
        iterations: 500,
        lo: x,
        hi: x,
    })
}

fn e1_series(x: f64) -> f64 {
    // E1(x) = -γ - ln x - Σ_{k≥1} (-x)^k / (k k!)
    let mut sum = 0.0;
    let mut term = 1.0;
    for k in 1..200 {
        term *= -x / k as f64;
        let add = term / k as f64;
        sum += add;
        if add.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    -EULER_GAMMA - x.ln() - sum
}

/// `E1(x) = ∫ₓ^∞ e^{-y} / y dy`.
pub fn exp_integral_e1(x: f64) -> Result<f64> {
    check_positive("exp_integral_e1", x)?;
    if x <= 1.0 {
        return Ok(e1_series(x));
    }
    Ok(exp_integral_e1_scaled(x)? * (-x).exp())
}

/// `eˣ x^{-a} Γ(a, x)`.
///
/// With `y = x eᵛ` the defining integral becomes
/// `∫₀^∞ exp(a v - x (eᵛ - 1)) dv`, smooth and bounded by 1 near `v = 0`
/// for any real `a`, so no analytic continuation is needed.
pub fn upper_incomplete_gamma_scaled(a: f64, x: f64, quad: &QuadratureSpec) -> Result<f64> {
    check_positive("upper_incomplete_gamma", x)?;
    if !a.is_finite() {
        return Err(Error::domain("upper_incomplete_gamma", format!("a must be finite, got {a}")));
    }
    // Pick V so that x (e^V - 1) - a V ≥ 760.
    let mut v_max = (1.0 + 760.0 / x).ln();
    for _ in 0..50 {
        let next = (1.0 + (760.0 + a.max(0.0) * v_max) / x).ln();
        if (next - v_max).abs() < 1e-6 {
            v_max = next;
            break;
        }
        v_max = next;
    }
    let f = |v: f64| (a * v - x * v.exp_m1()).exp();
    integrate_adaptive(f, 0.0, v_max, quad)
        .map(|r| r.value)
        .map_err(|e| e.within("upper_incomplete_gamma"))
}

/// `Γ(a, x) = ∫ₓ^∞ y^{a-1} e^{-y} dy` for real `a` and `x > 0`.
pub fn upper_incomplete_gamma(a: f64, x: f64, quad: &QuadratureSpec) -> Result<f64> {
    let scaled = upper_incomplete_gamma_scaled(a, x, quad)?;
    Ok(scaled * (a * x.ln() - x).exp())
}

/// Complete Gamma function.
pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn quad() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    // Independent oracle: composite Simpson in log-space, y = e^w.
    fn e1_oracle(x: f64) -> f64 {
        let (w0, w1) = (x.ln(), (x + 60.0).ln());
        let n = 200_000;
        let h = (w1 - w0) / n as f64;
        let f = |w: f64| (-(w.exp())).exp();
        let mut s = f(w0) + f(w1);
        for i in 1..n {
            s += f(w0 + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        s * h / 3.0
    }

    #[test]
    fn e1_at_one() {
        let v = exp_integral_e1(1.0).unwrap();
        assert_relative_eq!(v, e1_oracle(1.0), max_relative = 1e-10);
        assert_relative_eq!(v, 0.219_383_934_395_520_3, max_relative = 1e-13);
    }

    #[test]
    fn e1_matches_oracle_across_switch_point() {
        for x in [1e-3, 0.3, 0.999, 1.001, 2.5, 10.0, 40.0] {
            assert_relative_eq!(exp_integral_e1(x).unwrap(), e1_oracle(x), max_relative = 1e-9);
        }
    }

    #[test]
    fn e1_monotone_near_zero() {
        assert!(exp_integral_e1(1e-9).unwrap() > exp_integral_e1(1e-8).unwrap());
    }

    #[test]
    fn e1_elementary_bounds() {
        let mut x = 1e-3;
        while x <= 50.0 {
            let e1 = exp_integral_e1(x).unwrap();
            let lo = (-x).exp() / (x + 1.0);
            let hi = (-x).exp() / x;
            assert!(lo < e1 && e1 < hi, "x={x}");
            x *= 1.13;
        }
    }

    #[test]
    fn e1_scaled_large_argument() {
        // e^x E1(x) ~ 1/x (1 - 1/x + 2/x^2 - ...)
        let x = 1e5;
        let s = exp_integral_e1_scaled(x).unwrap();
        assert_relative_eq!(s, (1.0 - 1.0 / x + 2.0 / (x * x)) / x, max_relative = 1e-13);
    }

    #[test]
    fn e1_domain() {
        assert!(exp_integral_e1(0.0).is_err());
        assert!(exp_integral_e1(-2.0).is_err());
        assert!(exp_integral_e1_scaled(f64::NAN).is_err());
    }

    #[test]
    fn gamma_zero_is_e1() {
        for x in [0.01, 1.0, 2.0 / 10.240465, 3.0] {
            assert_relative_eq!(
                upper_incomplete_gamma(0.0, x, &quad()).unwrap(),
                exp_integral_e1(x).unwrap(),
                max_relative = 1e-10
            );
        }
    }

    #[test]
    fn gamma_one_is_exponential() {
        assert_relative_eq!(upper_incomplete_gamma(1.0, 1.0, &quad()).unwrap(), (-1f64).exp(), max_relative = 1e-12);
    }

    #[test]
    fn gamma_recurrence() {
        let mut a = -1.0;
        while a <= 1.0 {
            for x in [0.05, 0.3, 1.0, 5.0] {
                let lhs = upper_incomplete_gamma(a + 1.0, x, &quad()).unwrap();
                let rhs = a * upper_incomplete_gamma(a, x, &quad()).unwrap() + x.powf(a) * (-x).exp();
                assert_relative_eq!(lhs, rhs, max_relative = 1e-9);
            }
            a += 0.125;
        }
    }

    #[test]
    fn gamma_domain() {
        assert!(upper_incomplete_gamma(0.5, 0.0, &quad()).is_err());
        assert!(upper_incomplete_gamma(f64::NAN, 1.0, &quad()).is_err());
    }

    #[test]
    fn complete_gamma_values() {
        assert_relative_eq!(gamma(5.0), 24.0, max_relative = 1e-13);
        assert_relative_eq!(gamma(0.5), std::f64::consts::PI.sqrt(), max_relative = 1e-13);
    }
}
