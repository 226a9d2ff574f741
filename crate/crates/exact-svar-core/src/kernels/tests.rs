use super::*;
use crate::specfun::{erfcx_real, rgamma, Complex64};

fn cfg() -> EvalConfig {
    EvalConfig::default()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

// Reference values computed with 60-digit arithmetic from the Hermite series.
const K_REF: [(f64, f64, f64, f64); 10] = [
    (1.5, 1.0, 1.0, 0.263_651_164_807_421_23),
    (2.5, 1.0, 1.0, 0.299_007_002_317_527_1),
    (3.5, 3.0, -3.0, 9.916_772_391_231_362),
    (0.75, 0.5, 2.0, 0.077_709_796_186_872_93),
    (6.0, 3.0, 3.0, 3.408_540_072_744_354e-5),
    (3.5, 3.0, 3.0, -5.1714726282e-4),
    (6.0, 1.0, -3.0, 2.6167617101e-2),
    (1.5, 0.1, 3.0, 8.5700662972e-1),
    (0.5, 2.0, 1.0, -1.2740129161e-1),
    (2.0, 2.0, -10.0, 2.3218470115e4),
];

#[test]
fn m_alpha_trivial_values() {
    let sqrt_pi = core::f64::consts::PI.sqrt();
    assert!(rel(m_alpha(1.0, 0.0, &cfg()).unwrap().value, sqrt_pi / 2.0) < 1e-15);
    assert!(rel(m_alpha(2.0, 0.0, &cfg()).unwrap().value, 0.5) < 1e-15);
    assert!(rel(log_m_alpha(1.0, 0.0, &cfg()).unwrap(), (sqrt_pi / 2.0).ln()) < 1e-14);
    let want = sqrt_pi / 2.0 * erfcx_real(-1.5);
    assert!(rel(m_alpha(1.0, 3.0, &cfg()).unwrap().value, want) < 1e-14);
    let q = crate::quad::integrate(|x: f64| (-x * x + 3.0 * x).exp(), &[0.0, 1.5, 4.0, 10.0], 1e-15, 1e-15, 200);
    assert!(rel(want, q.value) < 1e-13);
    assert!((want - 16.531576).abs() < 1e-6);
}

#[test]
fn m_alpha_strategies_agree() {
    for &alpha in &[0.3, 1.0, 2.5, 5.0, 12.0, 40.0] {
        for &z in &[-60.0, -25.0, -8.0, -2.0, -0.5, 0.0, 0.7, 3.0, 9.0, 15.0, 30.0] {
            let auto = log_m_alpha(alpha, z, &cfg()).unwrap();
            let series = m_alpha::ln_m_series(alpha, z);
            let tol = 1e-12 * (1.0 + auto.abs());
            if z >= -1.0 {
                assert!((auto - series).abs() < tol, "series a={alpha} z={z}: {auto} {series}");
            }
            if z >= 0.0 {
                let kp = m_alpha::ln_m_kummer_pair(alpha, z);
                assert!((auto - kp).abs() < tol, "kummer a={alpha} z={z}: {auto} {kp}");
            }
        }
    }
}

#[test]
fn m_alpha_negative_region_vs_quadrature() {
    // ∫₀^∞ e^{−x²+xz} x^{α−1} dx / Γ(α), integrand peaks near x ≈ (α−1)/|z|
    for &alpha in &[0.6, 1.0, 3.5, 9.0] {
        for &z in &[-1.5, -4.0, -9.0, -20.0, -35.0] {
            let w = (alpha / z.abs()).max(0.05);
            let pts = [0.0, w, 4.0 * w, 16.0 * w, 64.0 * w, 64.0 * w + 10.0];
            let f = |x: f64| {
                if x == 0.0 {
                    0.0
                } else {
                    (-x * x + x * z + (alpha - 1.0) * x.ln() - crate::specfun::lgamma(alpha)).exp()
                }
            };
            let q = if alpha < 1.0 {
                // x = t^{1/α} removes the endpoint singularity
                let m = 1.0 / alpha;
                let tmax = (64.0 * w + 10.0).powf(alpha);
                crate::quad::integrate(
                    |t: f64| {
                        let x = t.powf(m);
                        (-x * x + x * z).exp() * m * (-crate::specfun::lgamma(alpha)).exp()
                    },
                    &[0.0, tmax * 1e-6, tmax * 1e-3, tmax],
                    1e-300,
                    1e-14,
                    2000,
                )
            } else {
                crate::quad::integrate(f, &pts, 1e-300, 1e-14, 2000)
            };
            let v = m_alpha(alpha, z, &cfg()).unwrap().value;
            assert!(rel(v, q.value) < 1e-11, "a={alpha} z={z}: {v} {}", q.value);
        }
    }
}

#[test]
fn m_alpha_integer_matches_general() {
    for a in 1..=6u32 {
        for &z in &[-6.0, -1.0, 0.0, 1.0, 4.0, 10.0] {
            let g = m_alpha(a as f64, z, &cfg()).unwrap().value;
            let c = m_alpha_integer(a, z).unwrap();
            assert!(rel(c, g) < 1e-10, "a={a} z={z}: {c} {g}");
        }
    }
    assert!(rel(m_alpha_integer(1, 0.0).unwrap(), core::f64::consts::PI.sqrt() / 2.0) < 1e-15);
    assert!(rel(m_alpha_integer(2, 0.0).unwrap(), 0.5) < 1e-15);
    assert!(m_alpha_integer(0, 1.0).is_err());
}

#[test]
fn m_alpha_quadrature_oracle() {
    // M_3(1) = ½ ∫ x² e^{−x²+x} dx
    let q = crate::quad::integrate(|x: f64| 0.5 * x * x * (-x * x + x).exp(), &[0.0, 4.0, 12.0], 1e-16, 1e-15, 200);
    assert!(rel(m_alpha(3.0, 1.0, &cfg()).unwrap().value, q.value) < 1e-12);
    assert!(rel(m_alpha_integer(3, 1.0).unwrap(), q.value) < 1e-12);
}

#[test]
fn m_alpha_limits() {
    // |z|^α M_α(z) → 1 as z → −∞
    for &alpha in &[0.5, 2.0, 7.0] {
        let v = log_m_alpha(alpha, -1000.0, &cfg()).unwrap() + alpha * 1000f64.ln();
        assert!(v.abs() < 0.01);
    }
    let v = log_m_alpha(2.0, -50.0, &cfg()).unwrap();
    assert!((v / (-2.0 * 50f64.ln()) - 1.0).abs() < 0.02);
    // e^{z²/4}(z/2)^{α−1}√π/Γ(α) as z → +∞
    for &alpha in &[1.0, 2.5, 4.0] {
        let lead = 400.0 + (alpha - 1.0) * 20f64.ln() + core::f64::consts::PI.sqrt().ln() - crate::specfun::lgamma(alpha);
        let v = log_m_alpha(alpha, 40.0, &cfg()).unwrap();
        assert!((v - lead).abs() < 0.01, "alpha {alpha}: {v} {lead}");
    }
}

#[test]
fn k_beta_reference_values() {
    for &(b, r, z, want) in &K_REF {
        for m in [KernelMethod::SaddleContour, KernelMethod::Contour, KernelMethod::HermiteSeries] {
            let v = k_beta(b, r, z, m, &cfg()).unwrap();
            let tol = if m == KernelMethod::HermiteSeries { 1e-8 } else { 1e-9 };
            assert!(rel(v.value, want) < tol, "{m:?} {b} {r} {z}: {} vs {want}", v.value);
            assert!(v.est_error.is_finite());
        }
    }
}

#[test]
fn k_beta_trivial_cases() {
    for m in [KernelMethod::Auto, KernelMethod::HermiteSeries, KernelMethod::ZeroFOneSeries, KernelMethod::Contour] {
        assert_eq!(k_beta(2.0, 0.0, 1.3, m, &cfg()).unwrap().value, 1.0);
    }
    let want = (2f64.sin() / 2.0) / (core::f64::consts::PI.sqrt() / 2.0);
    for m in [
        KernelMethod::Auto,
        KernelMethod::HermiteSeries,
        KernelMethod::ZeroFOneSeries,
        KernelMethod::Contour,
        KernelMethod::BesselIntegral,
    ] {
        let v = k_beta(1.5, 2f64.sqrt(), 0.0, m, &cfg()).unwrap().value;
        assert!(rel(v, want) < 1e-10, "{m:?}: {v} {want}");
    }
    assert!((want - 0.5129).abs() < 2e-4);
}

#[test]
fn k_beta_methods_agree() {
    let pts = [(2.5, 1.0, 1.0), (1.5, 2.0, -1.5), (4.0, 3.0, 2.0), (0.8, 1.2, 0.5), (7.0, 5.0, -4.0)];
    for &(b, r, z) in &pts {
        let base = k_beta(b, r, z, KernelMethod::Contour, &cfg()).unwrap().value;
        for m in [
            KernelMethod::HermiteSeries,
            KernelMethod::ZeroFOneSeries,
            KernelMethod::BesselIntegral,
            KernelMethod::SaddleContour,
        ] {
            let v = k_beta(b, r, z, m, &cfg()).unwrap().value;
            assert!(rel(v, base) < 1e-8, "{m:?} ({b},{r},{z}): {v} vs {base}");
        }
    }
    assert!(k_beta(0.5, 1.0, 1.0, KernelMethod::BesselIntegral, &cfg()).is_err());
}

#[test]
fn contour_is_rho_invariant() {
    for &(b, r, z) in &[(2.5, 1.0, 1.0), (3.5, 3.0, 3.0), (1.5, 0.5, -2.0)] {
        let vals: Vec<f64> = [0.5, 1.0, 2.0]
            .iter()
            .map(|&rho| {
                let c = EvalConfig {
                    contour_rho: Some(rho),
                    ..cfg()
                };
                k_beta(b, r, z, KernelMethod::Contour, &c).unwrap().value
            })
            .collect();
        assert!(rel(vals[0], vals[1]) < 1e-8 && rel(vals[2], vals[1]) < 1e-8, "{vals:?}");
    }
}

#[test]
fn saddle_pair_matches_single() {
    for &(b, r, z) in &[(2.5, 1.0, 1.0), (6.0, 3.0, 3.0), (3.5, 3.0, -3.0)] {
        let p = k_saddle_pair(b, r, z).unwrap();
        let (v, _) = p.pair.unwrap();
        let lower = k_beta(b - 1.0, r, z, KernelMethod::Contour, &cfg()).unwrap().value;
        assert!(rel(v * p.ln_scale.exp(), lower) < 1e-9);
    }
}

#[test]
fn quartic_roots_are_roots() {
    let roots = saddle::quartic_roots(-3.5, 1.2, 4.5);
    for s in roots {
        let p = ((s * s - 3.5) * s + 1.2) * s + 4.5;
        assert!(p.norm() < 1e-12);
    }
}

#[test]
fn w_beta_closed_forms() {
    let c = cfg();
    assert!(rel(w_beta(2.0, Complex64::new(0.0, 0.0), &c).unwrap().re, 1.0) < 1e-15);
    let w = w_beta(0.5, Complex64::new(0.0, 0.0), &c).unwrap().re;
    assert!((w - 0.5641896).abs() < 1e-7);
    let s = w_beta(2.0, Complex64::new(1.5, 0.0), &c).unwrap().re;
    assert!(rel(s, w_beta_integer_closed(1, 1.5)) < 1e-10);
    for m in 0..4 {
        for &y in &[-1.3, 0.4, 2.0] {
            let s = w_beta(1.0 + m as f64, Complex64::new(y, 0.0), &c).unwrap().re;
            assert!(rel(s, w_beta_integer_closed(m, y)) < 1e-9, "int m={m} y={y}");
            let s = w_beta(0.5 + m as f64, Complex64::new(y, 0.0), &c).unwrap().re;
            assert!(rel(s, w_beta_half_closed(m, y)) < 1e-9, "half m={m} y={y}");
        }
    }
    for &(b, y) in &[(1.7, 0.8), (3.2, 2.5)] {
        let s = w_beta(b, Complex64::new(y, 0.0), &c).unwrap().re;
        assert!(rel(s, w_beta_incgamma(b, y).unwrap()) < 1e-10);
    }
}

#[test]
fn tail_bound_values() {
    let b = k_beta_tail_bound(2.0, 1.0, 10.0).unwrap();
    assert!((b - 0.0127324).abs() < 1e-7);
    let b1 = k_beta_tail_bound(3.5, 2.0, 3.0).unwrap();
    let b2 = k_beta_tail_bound(3.5, 2.0, 6.0).unwrap();
    assert!(rel(b2, b1 / 2f64.powf(5.0)) < 1e-13);
    assert!(k_beta_tail_bound(1.0, 1.0, 1.0).is_err());
    for &beta in &[2.0, 3.5] {
        for &x in &[0.5, 2.0] {
            for i in 0..50 {
                let z = 1.0 + i as f64;
                let k = k_beta(beta, x.sqrt(), z, KernelMethod::Auto, &cfg()).unwrap().value;
                assert!(k.abs() <= k_beta_tail_bound(beta, x, z).unwrap());
            }
        }
    }
}

#[test]
fn r_zero_is_reciprocal_gamma() {
    assert_eq!(k_beta(3.7, 0.0, -2.0, KernelMethod::Auto, &cfg()).unwrap().value, rgamma(3.7));
}
