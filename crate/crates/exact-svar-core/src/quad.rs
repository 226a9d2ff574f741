//! Globally adaptive 21-point Gauss–Kronrod quadrature over finite panels.

use crate::prelude::*;
use core::ops::{Add, Mul, Sub};
use num_complex::Complex64;

/// Values that can be integrated: reals and complex numbers.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

const XGK: [f64; 11] = [
    0.995_657_163_025_808_1,
    0.973_906_528_517_171_7,
    0.930_157_491_355_708_2,
    0.865_063_366_688_984_5,
    0.780_817_726_586_416_9,
    0.679_409_568_299_024_4,
    0.562_757_134_668_604_7,
    0.433_395_394_129_247_2,
    0.294_392_862_701_460_2,
    0.148_874_338_981_631_22,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874,
    0.032_558_162_307_964_725,
    0.054_755_896_574_351_995,
    0.075_039_674_810_919_96,
    0.093_125_454_583_697_6,
    0.109_387_158_802_297_64,
    0.123_491_976_262_065_84,
    0.134_709_217_311_473_34,
    0.142_775_938_577_060_09,
    0.147_739_104_901_338_49,
    0.149_445_554_002_916_9,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_14,
    0.149_451_349_150_580_6,
    0.219_086_362_515_982_04,
    0.269_266_719_309_996_35,
    0.295_524_224_714_752_87,
];

/// One 21-point rule on `[a, b]`: `(kronrod value, error estimate, ∫|f|)`.
pub fn gk21<T: QuadValue, F: FnMut(f64) -> T>(f: &mut F, a: f64, b: f64) -> (T, f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut rk = fc * WGK[10];
    let mut rg = T::zero();
    let mut rabs = fc.magnitude() * WGK[10];
    let mut vals = [T::zero(); 21];
    vals[10] = fc;
    for j in 0..10 {
        let dx = h * XGK[j];
        let f1 = f(c - dx);
        let f2 = f(c + dx);
        vals[j] = f1;
        vals[20 - j] = f2;
        rk = rk + (f1 + f2) * WGK[j];
        rabs += (f1.magnitude() + f2.magnitude()) * WGK[j];
        if j % 2 == 1 {
            rg = rg + (f1 + f2) * WG[j / 2];
        }
    }
    let mean = rk * 0.5;
    let mut rasc = WGK[10] * (fc - mean).magnitude();
    for j in 0..10 {
        rasc += WGK[j] * ((vals[j] - mean).magnitude() + (vals[20 - j] - mean).magnitude());
    }
    let ha = h.abs();
    let result = rk * h;
    let rabs = rabs * ha;
    let rasc = rasc * ha;
    let mut err = ((rk - rg) * h).magnitude();
    if rasc != 0.0 && err != 0.0 {
        err = rasc * (200.0 * err / rasc).powf(1.5).min(1.0);
    }
    if rabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * rabs);
    }
    (result, err, rabs)
}

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult<T> {
    pub value: T,
    pub abs_error: f64,
    /// `∫|f|`, the scale against which rounding is judged.
    pub abs_integral: f64,
    pub evaluations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy)]
struct Segment<T> {
    a: f64,
    b: f64,
    value: T,
    err: f64,
    abs: f64,
}

/// Adaptive integration over the panels delimited by `points` (sorted).
///
/// Stops once the summed error estimate is below
/// `max(abs_tol, rel_tol·|value|)`, once it is at the rounding floor
/// `∝ ε∫|f|`, or when `max_segments` is reached. `converged` reports
/// whether the tolerance itself was met.
pub fn integrate<T: QuadValue, F: FnMut(f64) -> T>(
    mut f: F,
    points: &[f64],
    abs_tol: f64,
    rel_tol: f64,
    max_segments: usize,
) -> QuadResult<T> {
    let mut segs: Vec<Segment<T>> = Vec::with_capacity(points.len().max(2) * 4);
    for w in points.windows(2) {
        if w[1] > w[0] {
            let (v, e, r) = gk21(&mut f, w[0], w[1]);
            segs.push(Segment {
                a: w[0],
                b: w[1],
                value: v,
                err: e,
                abs: r,
            });
        }
    }
    let mut evaluations = 21 * segs.len();
    loop {
        let mut total = T::zero();
        let mut err = 0.0;
        let mut abs = 0.0;
        let mut worst = 0usize;
        for (i, s) in segs.iter().enumerate() {
            total = total + s.value;
            err += s.err;
            abs += s.abs;
            if s.err > segs[worst].err {
                worst = i;
            }
        }
        let target = abs_tol.max(rel_tol * total.magnitude());
        let done = err <= target;
        // every segment sits at its rounding floor: bisection cannot help
        let at_floor = err <= 60.0 * f64::EPSILON * abs;
        let too_small = segs.is_empty() || {
            let s = &segs[worst];
            let mid = 0.5 * (s.a + s.b);
            !(mid > s.a && mid < s.b)
        };
        if done || at_floor || segs.len() >= max_segments || too_small {
            return QuadResult {
                value: total,
                abs_error: err,
                abs_integral: abs,
                evaluations,
                converged: done,
            };
        }
        let s = segs[worst];
        let mid = 0.5 * (s.a + s.b);
        let (v1, e1, r1) = gk21(&mut f, s.a, mid);
        let (v2, e2, r2) = gk21(&mut f, mid, s.b);
        evaluations += 42;
        segs[worst] = Segment {
            a: s.a,
            b: mid,
            value: v1,
            err: e1,
            abs: r1,
        };
        segs.push(Segment {
            a: mid,
            b: s.b,
            value: v2,
            err: e2,
            abs: r2,
        });
    }
}

/// Non-adaptive 21-point Kronrod sum over the panels delimited by
/// `points`, returning `(value, Σ|Kronrod − Gauss|)`.
///
/// The Gauss–Kronrod difference mostly measures the 10-point Gauss
/// rule's error, so it is a generous bound when the panels already
/// resolve the integrand, as on oscillation-aligned grids.
pub fn fixed_panels<T: QuadValue, F: FnMut(f64) -> T>(mut f: F, points: &[f64]) -> (T, f64) {
    let mut total = T::zero();
    let mut err = 0.0;
    for w in points.windows(2) {
        let c = 0.5 * (w[0] + w[1]);
        let h = 0.5 * (w[1] - w[0]);
        let fc = f(c);
        let mut rk = fc * WGK[10];
        let mut rg = T::zero();
        for j in 0..10 {
            let dx = h * XGK[j];
            let s = f(c - dx) + f(c + dx);
            rk = rk + s * WGK[j];
            if j % 2 == 1 {
                rg = rg + s * WG[j / 2];
            }
        }
        total = total + rk * h;
        err += ((rk - rg) * h).magnitude();
    }
    (total, err)
}
