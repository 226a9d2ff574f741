//! Real and complex error functions built on the Faddeeva function
//! `w(z) = e^{−z²} erfc(−iz)`.
//!
//! `w` follows the Poppe–Wijers scheme: a Taylor expansion of
//! `e^{−z²}(1 − erf(−iz))` near the origin, Laplace continued fractions
//! elsewhere, and the reflection `w(z) = 2e^{−z²} − w(−z)` below the
//! real axis.

use crate::prelude::*;
use num_complex::Complex64;

const TWO_OVER_SQRT_PI: f64 = core::f64::consts::FRAC_2_SQRT_PI;

/// Faddeeva function `w(z)`.
pub fn faddeeva(z: Complex64) -> Complex64 {
    let (xi, yi) = (z.re, z.im);
    let xabs = xi.abs();
    let yabs = yi.abs();
    if !(xabs.is_finite() && yabs.is_finite()) {
        return Complex64::new(f64::NAN, f64::NAN);
    }
    if xabs > 1e150 || yabs > 1e150 {
        // w(z) ~ i/(√π z)
        let w = Complex64::new(0.0, TWO_OVER_SQRT_PI / 2.0) / z;
        return if yi >= 0.0 {
            w
        } else {
            Complex64::new(f64::INFINITY, f64::INFINITY)
        };
    }
    let x = xabs / 6.3;
    let y = yabs / 4.4;
    let qrho0 = x * x + y * y;
    let xquad = xabs * xabs - yabs * yabs;
    let yquad = 2.0 * xabs * yabs;
    let taylor = qrho0 < 0.085264;

    let (mut u, mut v);
    let (mut u2, mut v2) = (0.0, 0.0);
    if taylor {
        let qrho = (1.0 - 0.85 * y) * qrho0.sqrt();
        let n = (6.0 + 72.0 * qrho).round() as i32;
        let mut j = 2 * n + 1;
        let mut xsum = 1.0 / j as f64;
        let mut ysum = 0.0;
        for i in (1..=n).rev() {
            j -= 2;
            let fi = i as f64;
            let xaux = (xsum * xquad - ysum * yquad) / fi;
            ysum = (xsum * yquad + ysum * xquad) / fi;
            xsum = xaux + 1.0 / j as f64;
        }
        let u1 = -TWO_OVER_SQRT_PI * (xsum * yabs + ysum * xabs) + 1.0;
        let v1 = TWO_OVER_SQRT_PI * (xsum * xabs - ysum * yabs);
        let daux = (-xquad).exp();
        u2 = daux * yquad.cos();
        v2 = -daux * yquad.sin();
        u = u1 * u2 - v1 * v2;
        v = u1 * v2 + v1 * u2;
    } else {
        let (h, kapn, nu);
        if qrho0 > 1.0 {
            h = 0.0;
            kapn = 0;
            let qrho = qrho0.sqrt();
            nu = (3.0 + 1442.0 / (26.0 * qrho + 77.0)) as i32;
        } else {
            let qrho = (1.0 - y) * (1.0 - qrho0).sqrt();
            h = 1.88 * qrho;
            kapn = (7.0 + 34.0 * qrho).round() as i32;
            nu = (16.0 + 26.0 * qrho).round() as i32;
        }
        let h2 = 2.0 * h;
        let with_h = h > 0.0;
        let mut qlambda = if with_h { h2.powi(kapn) } else { 0.0 };
        let (mut rx, mut ry, mut sx, mut sy) = (0.0, 0.0, 0.0, 0.0);
        for n in (0..=nu).rev() {
            let np1 = (n + 1) as f64;
            let tx = yabs + h + np1 * rx;
            let ty = xabs - np1 * ry;
            let c = 0.5 / (tx * tx + ty * ty);
            rx = c * tx;
            ry = c * ty;
            if with_h && n <= kapn {
                let tx = qlambda + sx;
                let sx_new = rx * tx - ry * sy;
                sy = ry * tx + rx * sy;
                sx = sx_new;
                qlambda /= h2;
            }
        }
        if with_h {
            u = TWO_OVER_SQRT_PI * sx;
            v = TWO_OVER_SQRT_PI * sy;
        } else {
            u = TWO_OVER_SQRT_PI * rx;
            v = TWO_OVER_SQRT_PI * ry;
        }
        if yabs == 0.0 {
            u = (-xabs * xabs).exp();
        }
    }

    if yi < 0.0 {
        if taylor {
            u2 *= 2.0;
            v2 *= 2.0;
        } else {
            let w1 = 2.0 * (-xquad).exp();
            u2 = w1 * yquad.cos();
            v2 = -w1 * yquad.sin();
        }
        u = u2 - u;
        v = v2 - v;
        if xi > 0.0 {
            v = -v;
        }
    } else if xi < 0.0 {
        v = -v;
    }
    Complex64::new(u, v)
}

/// `erf(z)` on the first quadrant (`re ≥ 0`, `im ≥ 0`).
fn erf_q1(z: Complex64) -> Complex64 {
    if z.norm_sqr() < 0.25 {
        return erf_taylor(z);
    }
    Complex64::new(1.0, 0.0) - erfc_right(z)
}

/// `erfc(z)` for `re z ≥ 0`.
fn erfc_right(z: Complex64) -> Complex64 {
    (-z * z).exp() * faddeeva(Complex64::new(-z.im, z.re))
}

fn erf_taylor(z: Complex64) -> Complex64 {
    // erf z = 2/√π Σ (−1)^n z^{2n+1} / (n!(2n+1))
    let z2 = z * z;
    let mut term = z;
    let mut sum = z;
    for n in 1..60 {
        term = -term * z2 / n as f64;
        let t = term / (2 * n + 1) as f64;
        sum += t;
        if t.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    sum * TWO_OVER_SQRT_PI
}

/// Principal complex error function.
///
/// Computed on the first quadrant and mapped by `erf(−z) = −erf(z)` and
/// `erf(z̄) = conj(erf(z))`, so both symmetries hold exactly.
pub fn erf_complex(z: Complex64) -> Complex64 {
    let q = erf_q1(Complex64::new(z.re.abs(), z.im.abs()));
    // z = ±w or ±w̄ with w in the first quadrant
    let q = if (z.im < 0.0) != (z.re < 0.0) { q.conj() } else { q };
    if z.re < 0.0 {
        -q
    } else {
        q
    }
}

/// Principal complex complementary error function.
pub fn erfc_complex(z: Complex64) -> Complex64 {
    if z.re >= 0.0 {
        if z.norm_sqr() < 0.25 {
            Complex64::new(1.0, 0.0) - erf_taylor(z)
        } else {
            erfc_right(z)
        }
    } else {
        Complex64::new(2.0, 0.0) - erfc_complex(-z)
    }
}

/// `erf(x)` for real `x`.
pub fn erf_real(x: f64) -> f64 {
    libm::erf(x)
}

/// `erfc(x)` for real `x`.
pub fn erfc_real(x: f64) -> f64 {
    libm::erfc(x)
}

/// Scaled complementary error function `e^{x²} erfc(x)`, finite for all
/// `x` where the result is representable.
pub fn erfcx_real(x: f64) -> f64 {
    if x < 0.0 {
        if x < -26.7 {
            return f64::INFINITY;
        }
        return 2.0 * (x * x).exp() - erfcx_real(-x);
    }
    if x < 0.5 {
        return (x * x).exp() * libm::erfc(x);
    }
    faddeeva(Complex64::new(0.0, x)).re
}
