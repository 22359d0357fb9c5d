//! Quadrature rules: fixed Gauss–Legendre panels and a globally adaptive
//! Gauss–Kronrod (10/21) integrator for real or complex integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Values that can be accumulated by the quadrature rules.
pub trait QuadValue:
    Copy + Default + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    fn magnitude(&self) -> f64;
}

impl QuadValue for f64 {
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// Nodes and weights of the n-point Gauss–Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Tricomi initial guess, then Newton on P_n.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    /// Integrates `f` over [a, b] with this rule applied to `panels` equal panels.
    pub fn integrate<T: QuadValue, F: Fn(f64) -> T>(&self, f: F, a: f64, b: f64, panels: usize) -> T {
        let panels = panels.max(1);
        let h = (b - a) / panels as f64;
        let mut acc = T::default();
        for p in 0..panels {
            let lo = a + h * p as f64;
            let c = lo + 0.5 * h;
            let r = 0.5 * h;
            for (x, w) in self.nodes.iter().zip(&self.weights) {
                acc = acc + f(c + r * x) * (w * r);
            }
        }
        acc
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[allow(clippy::excessive_precision)]
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

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
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

#[derive(Debug, Clone, Copy)]
struct Segment<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
}

/// One application of the 21-point Kronrod rule with its embedded 10-point
/// Gauss estimate. Returns the Kronrod value and a QUADPACK-style error.
fn kronrod21<T: QuadValue, F: Fn(f64) -> T>(f: &F, a: f64, b: f64) -> Segment<T> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut gauss = T::default();
    let mut kronrod = fc * WGK[10];
    let mut fv1 = [T::default(); 10];
    let mut fv2 = [T::default(); 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod = kronrod + (f1 + f2) * WGK[j];
        if j % 2 == 1 {
            gauss = gauss + (f1 + f2) * WG[j / 2];
        }
    }
    let mean = kronrod * 0.5;
    let mut res_abs = fc.magnitude() * WGK[10];
    let mut res_asc = (fc - mean).magnitude() * WGK[10];
    for j in 0..10 {
        res_abs += WGK[j] * (fv1[j].magnitude() + fv2[j].magnitude());
        res_asc += WGK[j] * ((fv1[j] - mean).magnitude() + (fv2[j] - mean).magnitude());
    }
    let h = half.abs();
    res_abs *= h;
    res_asc *= h;
    let mut err = (kronrod - gauss).magnitude() * h;
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * res_abs;
    if floor > err {
        err = floor;
    }
    Segment {
        a,
        b,
        value: kronrod * half,
        error: err,
    }
}

struct ByError<T>(Segment<T>);

impl<T> PartialEq for ByError<T> {
    fn eq(&self, other: &Self) -> bool {
        self.0.error == other.0.error
    }
}
impl<T> Eq for ByError<T> {}
impl<T> PartialOrd for ByError<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for ByError<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.error.total_cmp(&other.0.error)
    }
}

/// Tolerances and budget for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptiveOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_segments: usize,
}

impl Default for AdaptiveOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-12,
            max_segments: 20_000,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult<T> {
    pub value: T,
    pub error: f64,
    pub evaluations: usize,
}

/// Globally adaptive Gauss–Kronrod integration over the partition given by
/// `breaks` (sorted, at least two points). Each initial piece may further be
/// split into `initial_panels` equal panels.
pub fn integrate<T, F>(
    f: F,
    breaks: &[f64],
    initial_panels: usize,
    opts: &AdaptiveOptions,
) -> Result<QuadResult<T>>
where
    T: QuadValue,
    F: Fn(f64) -> T,
{
    if breaks.len() < 2 {
        return Err(Error::InvalidArgument(
            "quadrature needs at least two break points".into(),
        ));
    }
    let mut heap = BinaryHeap::new();
    let mut evaluations = 0usize;
    let panels = initial_panels.max(1);
    for w in breaks.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        if hi <= lo {
            continue;
        }
        let h = (hi - lo) / panels as f64;
        for p in 0..panels {
            let a = lo + h * p as f64;
            let b = if p + 1 == panels { hi } else { a + h };
            heap.push(ByError(kronrod21(&f, a, b)));
            evaluations += 21;
        }
    }
    let total = |heap: &BinaryHeap<ByError<T>>| -> (T, f64) {
        heap.iter().fold((T::default(), 0.0), |(v, e), s| (v + s.0.value, e + s.0.error))
    };
    let (mut value, mut error) = total(&heap);
    let mut splits = 0usize;
    loop {
        let target = opts.abs_tol.max(opts.rel_tol * value.magnitude());
        if error <= target {
            break;
        }
        if heap.len() >= opts.max_segments {
            return Err(Error::QuadratureFailure {
                tolerance: target,
                estimate: error,
                evaluations,
            });
        }
        let worst = heap.pop().expect("non-empty segment heap").0;
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            // Interval cannot be split further in floating point.
            return Err(Error::QuadratureFailure {
                tolerance: target,
                estimate: error,
                evaluations,
            });
        }
        let left = kronrod21(&f, worst.a, mid);
        let right = kronrod21(&f, mid, worst.b);
        evaluations += 42;
        value = value - worst.value + left.value + right.value;
        error = error - worst.error + left.error + right.error;
        heap.push(ByError(left));
        heap.push(ByError(right));
        splits += 1;
        if splits.is_multiple_of(64) {
            // Refresh running sums to shed accumulated cancellation.
            let (v, e) = total(&heap);
            value = v;
            error = e;
        }
    }
    Ok(QuadResult {
        value,
        error,
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_high_degree_polynomials() {
        let rule = GaussLegendre::new(32);
        let s: f64 = rule.weights.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
        // x^62 is integrated exactly by a 32-point rule.
        let v = rule.integrate(|x: f64| x.powi(62), -1.0, 1.0, 1);
        assert!((v - 2.0 / 63.0).abs() < 1e-14);
        let v = rule.integrate(|x: f64| x.exp(), 0.0, 2.0, 3);
        assert!((v - (2f64.exp() - 1.0)).abs() < 1e-13);
    }

    #[test]
    fn kronrod_adaptive_handles_oscillation_and_kinks() {
        let opts = AdaptiveOptions::default();
        let r = integrate(|x: f64| (50.0 * x).cos(), &[0.0, 3.0], 1, &opts).unwrap();
        assert!((r.value - (150.0f64).sin() / 50.0).abs() < 1e-12);
        let r = integrate(|x: f64| x.abs().sqrt(), &[-1.0, 1.0], 1, &opts).unwrap();
        assert!((r.value - 4.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn complex_integrand() {
        let opts = AdaptiveOptions::default();
        let r = integrate(
            |x: f64| Complex64::new(0.0, 3.0 * x).exp(),
            &[0.0, 1.0, 2.0],
            2,
            &opts,
        )
        .unwrap();
        let exact = (Complex64::new(0.0, 6.0).exp() - 1.0) / Complex64::new(0.0, 3.0);
        assert!((r.value - exact).norm() < 1e-13);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let opts = AdaptiveOptions {
            abs_tol: 1e-14,
            rel_tol: 0.0,
            max_segments: 4,
        };
        let err = integrate(|x: f64| (1.0 / x).sin(), &[1e-6, 1.0], 1, &opts).unwrap_err();
        assert!(matches!(err, Error::QuadratureFailure { .. }));
    }
}
