use super::*;
use core::f64::consts::{FRAC_1_SQRT_2, PI};

fn quick_plan() -> FourierPlan {
    FourierPlan {
        tol: 1e-7,
        ..FourierPlan::default()
    }
}

#[test]
fn q_max_and_moments() {
    assert_eq!(q_max(4).unwrap(), 1.0);
    assert!((q_max(3).unwrap() - 2.0 / 3.0).abs() < 1e-15);
    assert_eq!(q_max(2).unwrap(), 0.5);
    assert!(q_max(1).is_err());
    let (m, v) = moments(3).unwrap();
    assert!((m - 1.0 / 6.0).abs() < 1e-15 && (v - 1.0 / 60.0).abs() < 1e-15);
    let (m, v) = moments(13).unwrap();
    assert!((m - 1.0).abs() < 1e-15 && (v - 29.0 / 390.0).abs() < 1e-15);
    let (m, v) = moments(7).unwrap();
    assert!((normal_approx_cdf(7, m).unwrap() - 0.5).abs() < 1e-15);
    assert!((normal_approx_cdf(7, m + v.sqrt()).unwrap() - 0.841_344_746_068_542_9).abs() < 1e-9);
}

#[test]
fn small_radius_form() {
    assert!((leading_coefficient(4) - 8.0 * PI / 3.0).abs() < 1e-12);
    assert!((leading_coefficient(3) - 3f64.sqrt() * PI).abs() < 1e-12);
    let v = small_r_cdf(3, 0.3).unwrap();
    let hand = 3f64.sqrt() * PI * 0.09 - 2.0 * 6f64.sqrt() * 0.027;
    assert!((v - hand).abs() < 1e-12);
    assert!((v - 0.357_453_5).abs() < 1e-6);
    assert!(small_r_cdf(3, 0.8).is_err());
    assert!(small_r_cdf(3, 0.0).is_err());
}

#[test]
fn b_constants() {
    assert!((b_closed_form(3).unwrap() - 2.0 * 6f64.sqrt()).abs() < 1e-12);
    for (n, b) in [(8, 13.03951), (9, 11.72490), (10, 9.90095)] {
        assert!((b_closed_form(n).unwrap() - b).abs() < 1e-5, "b({n})");
    }
}

#[test]
fn fhat_is_a_characteristic_function() {
    let plan = FourierPlan::default();
    for n in [3usize, 5, 8] {
        let mut t = 0.1;
        while t <= 200.0 {
            let v = fhat(n, t, &plan).unwrap();
            assert!(v.norm() <= 1.0 + 1e-12, "n={n} t={t} |f̂|={}", v.norm());
            let w = fhat(n, -t, &plan).unwrap();
            assert!((w - v.conj()).norm() < 1e-13, "symmetry n={n} t={t}");
            t *= 1.7;
        }
        let v = fhat(n, 1e-6, &plan).unwrap();
        assert!((v.norm() - 1.0).abs() < 1e-4);
        // first moment: f̂(t) ≈ 1 + i t E[Q]
        let t = 1e-5;
        let v = fhat(n, t, &plan).unwrap();
        let m = moments(n).unwrap().0;
        assert!((v.im / t - m).abs() < 1e-4, "n={n}: {}", v.im / t);
    }
    assert!(fhat(2, 1.0, &plan).is_err());
    assert!(fhat(3, 0.0, &plan).is_err());
}

#[test]
fn n2_closed_form() {
    let plan = quick_plan();
    let p = UniformParent::new(2).unwrap();
    let r = cdf(&p, 0.125, &plan).unwrap();
    assert_eq!(r.method, Method::UniformClosedForm);
    assert!((r.value - (2.0 * 0.5 - 0.25)).abs() < 1e-15);
    assert!(cdf(&p, 0.5, &plan).is_err());
}

#[test]
fn cdf_matches_small_radius_form() {
    let plan = quick_plan();
    for n in [3usize, 6] {
        let uv = UniformVariance::new(n, &plan).unwrap();
        assert_eq!(uv.cdf(0.0).unwrap().value, 0.0);
        for r in [0.1, 0.3, 0.5, 0.7, FRAC_1_SQRT_2] {
            let f = uv.cdf(r * r).unwrap();
            let want = small_r_cdf(n, r).unwrap();
            assert!((f.value - want).abs() < 1e-7, "n={n} r={r}: {} vs {want}", f.value);
            assert!(f.est_error <= plan.tol);
        }
        let f = uv.cdf(0.09).unwrap().value;
        if n == 3 {
            assert!((f - 0.357_453_5).abs() < 1e-6);
        }
    }
}

#[test]
fn cdf_shape() {
    let plan = quick_plan();
    for n in 3..=8usize {
        let uv = UniformVariance::new(n, &plan).unwrap();
        let q = uv.q_max();
        let mut prev = 0.0;
        for i in 1..200 {
            let v = uv.cdf(q * i as f64 / 200.0).unwrap().value;
            assert!(v >= prev - 1e-7, "n={n} i={i}");
            prev = v;
        }
        let top = uv.cdf(q - 1e-3).unwrap().value;
        assert!(top >= 1.0 - 5e-3, "n={n}: {top}");
        assert!(uv.cdf(q).is_err());
        // F(x) / x^{(n−1)/2} settles to A(n) over a decade
        let a = leading_coefficient(n);
        for x in [1e-3, 3e-3, 1e-2] {
            let ratio = uv.cdf(x).unwrap().value / x.powf(0.5 * (n as f64 - 1.0));
            assert!((ratio / a - 1.0).abs() < 0.2, "n={n} x={x} ratio {ratio}");
        }
    }
}

#[test]
fn density() {
    let plan = quick_plan();
    let p3 = UniformParent::new(3).unwrap();
    assert!(matches!(pdf(&p3, 0.3, &plan), Err(Error::Unsupported(_))));
    let uv = UniformVariance::new(4, &plan).unwrap();
    let h = 1e-4;
    for x in [0.3, 0.55, 0.8] {
        let d = uv.pdf(x).unwrap().value;
        let fd = (uv.cdf(x + h).unwrap().value - uv.cdf(x - h).unwrap().value) / (2.0 * h);
        assert!((d / fd - 1.0).abs() < 1e-3, "x={x}: {d} vs {fd}");
    }
    let uv = UniformVariance::new(5, &plan).unwrap();
    assert!(uv.pdf(1e-4).unwrap().value < 0.05);
    assert!(uv.pdf(uv.q_max() - 1e-4).unwrap().value < 0.05);
}

#[test]
fn b_from_series() {
    let plan = quick_plan();
    let b = estimate_b(5, &plan).unwrap();
    assert!((b.value - b_closed_form(5).unwrap()).abs() < 1e-5, "{}", b.value);
}

#[test]
fn simple_statistic() {
    let plan = FourierPlan::default();
    let v = simple_stat_cdf(2, 0.2, &plan).unwrap();
    assert!((v.value - 0.628_318_5).abs() < 1e-7);
    assert_eq!(simple_stat_cdf(4, 0.0, &plan).unwrap().value, 0.0);
    assert!(simple_stat_cdf(3, 0.75, &plan).is_err());
    // below 1/4 the ball lies inside the cube
    for n in [3usize, 4, 5] {
        for x in [0.05, 0.15, 0.24] {
            let v = simple_stat_cdf(n, x, &plan).unwrap().value;
            let want = ball_volume(n) * x.powf(0.5 * n as f64);
            assert!((v - want).abs() < 1e-8, "n={n} x={x}: {v} vs {want}");
        }
    }
    // n = 2 above 1/4: the disk with four segments removed
    let v = simple_stat_cdf(2, 0.49, &plan).unwrap().value;
    assert!(v > 0.99 && v < 1.0);
}
