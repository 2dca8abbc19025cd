//! Brute-force oracles, deliberately simpler than the library code.

#![allow(dead_code)]

/// Composite trapezoid on `[a, b]` with `n` panels.
pub fn trapezoid<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = 0.5 * (f(a) + f(b));
    for i in 1..n {
        s += f(a + i as f64 * h);
    }
    s * h
}

/// Composite Simpson on `[a, b]` with `n` (even) panels.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        s += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

fn weight(s: f64, t: f64) -> f64 {
    if s >= 0.0 {
        (s.sqrt() * t).cosh()
    } else {
        ((-s).sqrt() * t).cos()
    }
}

/// `K_ν(x)` with `ν² = s`: trapezoid on `t ∈ [0, 12]`, `10⁶` panels.
pub fn bessel_k(s: f64, x: f64) -> f64 {
    trapezoid(|t| (-x * t.cosh()).exp() * weight(s, t), 0.0, 12.0, 1_000_000)
}

/// `∂K_ν(x)/∂x` by the same rule.
pub fn bessel_k_dx(s: f64, x: f64) -> f64 {
    -trapezoid(|t| t.cosh() * (-x * t.cosh()).exp() * weight(s, t), 0.0, 12.0, 1_000_000)
}

/// `Γ(a, x)` by Simpson in `w = ln y` over `[ln x, ln 60]`; the tail past 60
/// is below `60^{a-1} e^{-60}`.
pub fn upper_gamma(a: f64, x: f64) -> f64 {
    simpson(|w| (a * w - w.exp()).exp(), x.ln(), 60f64.ln(), 1_000_000)
}

/// `E1(x)` as `Γ(0, x)`.
pub fn e1(x: f64) -> f64 {
    upper_gamma(0.0, x)
}
