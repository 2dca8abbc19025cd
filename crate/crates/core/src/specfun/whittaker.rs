//! Whittaker `W_{0,b}` and `W_{1,b}`, reduced to Bessel K.

use super::bessel::{bessel_k_dx_neg_scaled, bessel_k_scaled, OrderSquared};
use super::quad::QuadratureSpec;
use crate::error::{Error, Result};

fn check(op: &'static str, z: f64) -> Result<()> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::domain(op, format!("argument must be positive and finite, got {z}")));
    }
    Ok(())
}

/// `W_{0,b}(z) = √(z/π) K_b(z/2)` with `b² = order`.
pub fn whittaker_w0(order: OrderSquared, z: f64, quad: &QuadratureSpec) -> Result<f64> {
    check("whittaker_w0", z)?;
    let half = 0.5 * z;
    Ok((z / std::f64::consts::PI).sqrt() * bessel_k_scaled(order, half, quad)? * (-half).exp())
}

/// Brace term of `W_{1,b}(2/x)` with `e^{-1/x}` stripped:
/// `(1 - x/2) e^u K_b(u) - e^u K_b'(u)` at `u = 1/x`.
pub(crate) fn w1_brace_scaled(order: OrderSquared, x: f64, quad: &QuadratureSpec) -> Result<f64> {
    let u = 1.0 / x;
    let k = bessel_k_scaled(order, u, quad)?;
    let d = bessel_k_dx_neg_scaled(order, u, quad)?;
    Ok((1.0 - 0.5 * x) * k + d)
}

fn prefactor(x: f64) -> f64 {
    (2.0 / (std::f64::consts::PI * x)).sqrt() / x
}

/// `W_{1,b}(z)` through the derivative form
/// `W_{1,b}(2/x) = (1/x) √(2/(πx)) {(1 - x/2) K_b(1/x) - K_b'(1/x)}`.
pub fn whittaker_w1(order: OrderSquared, z: f64, quad: &QuadratureSpec) -> Result<f64> {
    check("whittaker_w1", z)?;
    let x = 2.0 / z;
    Ok(prefactor(x) * w1_brace_scaled(order, x, quad)? * (-1.0 / x).exp())
}

/// `W_{1,b}(z)` through `K_{b-1}`; real order only.
pub fn whittaker_w1_k_minus(order: OrderSquared, z: f64, quad: &QuadratureSpec) -> Result<f64> {
    w1_shifted("whittaker_w1_k_minus", order, z, -1.0, quad)
}

/// `W_{1,b}(z)` through `K_{b+1}`; real order only.
pub fn whittaker_w1_k_plus(order: OrderSquared, z: f64, quad: &QuadratureSpec) -> Result<f64> {
    w1_shifted("whittaker_w1_k_plus", order, z, 1.0, quad)
}

fn w1_shifted(op: &'static str, order: OrderSquared, z: f64, shift: f64, quad: &QuadratureSpec) -> Result<f64> {
    check(op, z)?;
    let b = order
        .real_order()
        .ok_or_else(|| Error::domain(op, "shifted-order form needs a real order"))?;
    let x = 2.0 / z;
    let u = 1.0 / x;
    // 1 - (x/2)(1 ∓ 2b), with ξ = 2b.
    let coeff = 1.0 - 0.5 * x * (1.0 + shift * 2.0 * b);
    let k = bessel_k_scaled(order, u, quad)?;
    let k_shift = bessel_k_scaled(OrderSquared::from_real_order(b + shift)?, u, quad)?;
    Ok(prefactor(x) * (coeff * k + k_shift) * (-u).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn quad() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn w0_half_order_reduces_to_exponential() {
        let o = OrderSquared::new(0.25).unwrap();
        assert_relative_eq!(whittaker_w0(o, 2.0, &quad()).unwrap(), (-1f64).exp(), max_relative = 1e-12);
    }

    #[test]
    fn w0_positive() {
        // Imaginary orders stay small here; larger ones change sign near 0.
        for s in [-0.04, -0.01, 0.0, 0.3] {
            for z in [0.1, 2.0, 30.0] {
                assert!(whittaker_w0(OrderSquared::new(s).unwrap(), z, &quad()).unwrap() > 0.0);
            }
        }
    }

    #[test]
    fn w1_three_forms_agree() {
        for s in [0.0, 0.04, 0.25, 0.6] {
            let o = OrderSquared::new(s).unwrap();
            for x in [0.1, 1.0, 7.0, 25.0] {
                let z = 2.0 / x;
                let d = whittaker_w1(o, z, &quad()).unwrap();
                let m = whittaker_w1_k_minus(o, z, &quad()).unwrap();
                let p = whittaker_w1_k_plus(o, z, &quad()).unwrap();
                let scale = d.abs().max(m.abs()).max(p.abs());
                assert!((d - m).abs() <= 1e-9 * scale, "s={s} x={x}: {d} vs {m}");
                assert!((d - p).abs() <= 1e-9 * scale, "s={s} x={x}: {d} vs {p}");
            }
        }
    }

    #[test]
    fn w1_half_order_at_x_one() {
        let o = OrderSquared::new(0.25).unwrap();
        let d = whittaker_w1(o, 2.0, &quad()).unwrap();
        let m = whittaker_w1_k_minus(o, 2.0, &quad()).unwrap();
        assert_relative_eq!(d, m, max_relative = 1e-10);
        // K_{1/2} closed form: W_{1,1/2}(2) = sqrt(2/π) {(1/2) K + (3/2) K} = 2 sqrt(2/π) K_{1/2}(1)
        let k = (std::f64::consts::PI / 2.0).sqrt() * (-1f64).exp();
        assert_relative_eq!(d, 2.0 * (2.0 / std::f64::consts::PI).sqrt() * k, max_relative = 1e-10);
    }

    #[test]
    fn shifted_forms_reject_imaginary_order() {
        let o = OrderSquared::new(-0.04).unwrap();
        assert!(whittaker_w1_k_minus(o, 0.5, &quad()).is_err());
        assert!(whittaker_w1(o, 0.5, &quad()).is_ok());
    }
}
