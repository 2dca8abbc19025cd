//! Globally adaptive 21-point Gauss-Kronrod quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Tolerances for [`integrate_adaptive`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-14,
            rel_tol: 1e-10,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0 && self.max_subdivisions >= 1) {
            return Err(Error::Config(format!(
                "quadrature spec needs abs_tol > 0, rel_tol > 0, max_subdivisions >= 1 (got {self:?})"
            )));
        }
        Ok(())
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

/// Value and error estimate of an integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub err_est: f64,
}

// Kronrod abscissae on [0, 1]; odd indices are the 10-point Gauss nodes.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
    /// Rounding level of the segment sum, `50 ε ∫|f|`.
    floor: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn gk21<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[10] * fc;
    let mut kronrod_abs = WGK[10] * fc.abs();
    let mut gauss = 0.0;
    for i in 0..10 {
        let dx = half * XGK[i];
        let (lo, hi) = (f(center - dx), f(center + dx));
        let pair = lo + hi;
        kronrod += WGK[i] * pair;
        kronrod_abs += WGK[i] * (lo.abs() + hi.abs());
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    let value = kronrod * half;
    let mut err = ((kronrod - gauss) * half).abs();
    // Floor the estimate at the rounding level of the sum.
    let floor = 50.0 * f64::EPSILON * (kronrod_abs * half).abs();
    if err < floor {
        err = floor;
    }
    Segment { a, b, value, err, floor }
}

/// Integrate `f` over `(a, b)`; `b` may be `f64::INFINITY`.
///
/// The semi-infinite case uses `y = a + u / (1 - u)` on `u in (0, 1)`.
/// No rule node touches an endpoint, so integrable endpoint singularities
/// are tolerated. Bisects the segment with the largest error estimate until
/// the total error is below `max(abs_tol, rel_tol * |value|)`.
pub fn integrate_adaptive<F>(mut f: F, a: f64, b: f64, quad: &QuadratureSpec) -> Result<Integral>
where
    F: FnMut(f64) -> f64,
{
    quad.validate()?;
    if a.is_nan() || b.is_nan() || a.is_infinite() || !(a < b) {
        return Err(Error::domain(
            "integrate_adaptive",
            format!("need finite a < b, got ({a}, {b})"),
        ));
    }
    if b.is_infinite() {
        let mapped = move |u: f64| {
            let w = 1.0 - u;
            let y = a + u / w;
            let v = f(y);
            if v == 0.0 {
                0.0
            } else {
                v / (w * w)
            }
        };
        return adaptive(mapped, 0.0, 1.0, quad);
    }
    adaptive(f, a, b, quad)
}

/// [`integrate_adaptive`] for an integrand that can fail. The first
/// integrand error wins over any quadrature error it causes.
pub fn try_integrate_adaptive<F>(mut f: F, a: f64, b: f64, quad: &QuadratureSpec) -> Result<Integral>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut failure = None;
    let out = integrate_adaptive(
        |x| match f(x) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        a,
        b,
        quad,
    );
    match failure {
        Some(e) => Err(e),
        None => out,
    }
}

fn adaptive<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, quad: &QuadratureSpec) -> Result<Integral> {
    let first = gk21(&mut f, a, b);
    let mut total = first.value;
    let mut total_err = first.err;
    let mut total_floor = first.floor;
    let mut heap = BinaryHeap::new();
    heap.push(first);
    let mut subdivisions = 1;

    // Cancellation can put the requested tolerance below what rounding
    // allows; stop once the error is within twice the rounding floor.
    while total_err > quad.target(total).max(2.0 * total_floor) {
        if !total.is_finite() {
            return Err(Error::Accuracy {
                op: "integrate_adaptive",
                estimate: total,
                err_est: total_err,
            });
        }
        if subdivisions >= quad.max_subdivisions {
            return Err(Error::Accuracy {
                op: "integrate_adaptive",
                estimate: total,
                err_est: total_err,
            });
        }
        let worst = heap.pop().expect("heap holds every segment");
        let mid = 0.5 * (worst.a + worst.b);
        if !(worst.a < mid && mid < worst.b) {
            // Segment is at floating-point resolution; nothing left to gain.
            heap.push(worst);
            return Err(Error::Accuracy {
                op: "integrate_adaptive",
                estimate: total,
                err_est: total_err,
            });
        }
        let left = gk21(&mut f, worst.a, mid);
        let right = gk21(&mut f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        total_floor += left.floor + right.floor - worst.floor;
        heap.push(left);
        heap.push(right);
        subdivisions += 1;

        // Re-sum occasionally to keep incremental drift out of the estimate.
        if subdivisions % 64 == 0 {
            total = heap.iter().map(|s| s.value).sum();
            total_err = heap.iter().map(|s| s.err).sum();
            total_floor = heap.iter().map(|s| s.floor).sum();
        }
    }

    let value: f64 = heap.iter().map(|s| s.value).sum();
    let err_est: f64 = heap.iter().map(|s| s.err).sum();
    Ok(Integral { value, err_est })
}
