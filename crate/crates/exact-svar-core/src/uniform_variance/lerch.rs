use crate::prelude::*;
use crate::quad::integrate;
use crate::specfun::{rgamma, Complex64};
use core::f64::consts::PI;

/// `Σ_{k>K} k^{−s} e^{ikθ}` for `s > 1`, from
/// `Γ(s)⁻¹ ∫₀^∞ u^{s−1} e^{−(K+1)(u−iθ)} / (1 − e^{−(u−iθ)}) du`.
pub(crate) fn tail_sum(s: f64, theta: f64, k: usize) -> Complex64 {
    debug_assert!(s > 1.0);
    let kp = (k + 1) as f64;
    // reduce θ to (−π, π] so that the denominator is small only near 0
    let th = theta - 2.0 * PI * (theta / (2.0 * PI)).round();
    // v = (K+1)u = w²
    let f = |w: f64| {
        if w == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let v = w * w;
        let eps = v / kp;
        // 1 − e^{−ε+iθ} = −expm1(−ε + iθ)
        let em = libm::expm1(-eps);
        let (sn, cs) = libm::sincos(th);
        let half = libm::sin(0.5 * th);
        let d = Complex64::new(-(em * cs - 2.0 * half * half), -(-eps).exp() * sn);
        let num = 2.0 * (w.ln() * (2.0 * s - 1.0) - v).exp();
        Complex64::new(num, 0.0) / d
    };
    let pts = [0.0, 0.05, 0.2, 0.5, 1.0, 2.0, 3.0, 4.5, 6.5, 9.0];
    let r = integrate(f, &pts, 1e-17, 1e-13, 400);
    let phase = Complex64::from_polar(1.0, (kp * th) % (2.0 * PI));
    phase * r.value * (kp.powf(-s) * rgamma(s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn direct(s: f64, theta: f64, k: usize) -> Complex64 {
        // plain summation; at θ = 0 the remainder is closed by Euler–Maclaurin
        let n = 2_000_000usize;
        let mut acc = Complex64::new(0.0, 0.0);
        for j in (k + 1)..=n {
            acc += Complex64::from_polar((j as f64).powf(-s), j as f64 * theta);
        }
        if theta == 0.0 {
            let nf = n as f64;
            acc += nf.powf(1.0 - s) / (s - 1.0) - 0.5 * nf.powf(-s);
        }
        acc
    }

    #[test]
    fn matches_partial_sums() {
        for &(s, th) in &[(2.0, 0.7), (2.5, 2.9), (3.0, 0.01), (2.0, 0.0), (1.5, 1.3)] {
            let k = 50;
            let a = tail_sum(s, th, k);
            let b = direct(s, th, k);
            let slack = if s <= 1.5 { 2e-6 } else { 1e-9 };
            assert!((a - b).norm() < slack * b.norm().max(1e-3), "{s} {th}: {a} {b}");
        }
    }
}
