use crate::error::{Error, Result};

/// Stopping rule for [`find_root_bracketed`].
///
/// `x_tol` is relative to the magnitude of the current iterate (with an
/// absolute floor of `x_tol` itself near zero); `f_tol` is absolute.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootSpec {
    pub x_tol: f64,
    pub f_tol: f64,
    pub max_iter: usize,
}

impl Default for RootSpec {
    fn default() -> Self {
        Self {
            x_tol: 1e-12,
            f_tol: 1e-12,
            max_iter: 200,
        }
    }
}

impl RootSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.x_tol > 0.0 && self.f_tol >= 0.0 && self.max_iter >= 1) {
            return Err(Error::Config(format!(
                "root spec needs x_tol > 0, f_tol >= 0, max_iter >= 1 (got {self:?})"
            )));
        }
        Ok(())
    }
}

/// Brent's method: inverse quadratic interpolation and secant steps,
/// falling back to bisection whenever a step would leave the bracket or
/// shrink it too slowly.
pub fn find_root_bracketed<F>(mut f: F, lo: f64, hi: f64, spec: &RootSpec) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    spec.validate()?;
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if !(fa.is_finite() && fb.is_finite()) || fa.signum() == fb.signum() {
        return Err(Error::Bracket {
            op: "find_root_bracketed",
            lo,
            hi,
            f_lo: fa,
            f_hi: fb,
        });
    }

    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;

    for _ in 0..spec.max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }

        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * spec.x_tol * b.abs().max(1e-300).max(spec.x_tol);
        let half = 0.5 * (c - b);
        if fb.abs() <= spec.f_tol || half.abs() <= tol {
            return Ok(b);
        }

        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * half * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * half * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * half * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = half;
                e = d;
            }
        } else {
            d = half;
            e = d;
        }

        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(half) };
        fb = f(b);
        if !fb.is_finite() {
            return Err(Error::Convergence {
                op: "find_root_bracketed",
                iterations: 0,
                lo: b.min(c),
                hi: b.max(c),
            });
        }
    }
    Err(Error::Convergence {
        op: "find_root_bracketed",
        iterations: spec.max_iter,
        lo: b.min(c),
        hi: b.max(c),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sqrt_two() {
        let r = find_root_bracketed(|x| x * x - 2.0, 1.0, 2.0, &RootSpec::default()).unwrap();
        assert!((r - 2f64.sqrt()).abs() <= 2e-12);
    }

    #[test]
    fn cosine_root() {
        let r = find_root_bracketed(f64::cos, 1.0, 2.0, &RootSpec::default()).unwrap();
        assert!((r - std::f64::consts::FRAC_PI_2).abs() <= 2e-12);
    }

    #[test]
    fn no_sign_change() {
        let e = find_root_bracketed(|x| x * x + 1.0, -1.0, 1.0, &RootSpec::default()).unwrap_err();
        assert!(matches!(e, Error::Bracket { .. }));
    }

    #[test]
    fn iteration_cap() {
        let spec = RootSpec {
            x_tol: 1e-15,
            f_tol: 0.0,
            max_iter: 2,
        };
        let e = find_root_bracketed(|x| x.powi(3) - 0.3, 0.0, 5.0, &spec).unwrap_err();
        assert!(matches!(e, Error::Convergence { iterations: 2, .. }));
    }

    proptest! {
        #[test]
        fn stays_in_bracket(root in -5.0f64..5.0, k in 1u32..4) {
            let f = |x: f64| (x - root).powi(2 * k as i32 - 1);
            let spec = RootSpec { f_tol: 0.0, ..RootSpec::default() };
            let r = find_root_bracketed(f, -6.0, 6.0, &spec).unwrap();
            prop_assert!((-6.0..=6.0).contains(&r));
            prop_assert!((r - root).abs() < 1e-9);
        }
    }
}
