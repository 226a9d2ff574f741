use exact_svar_core::kernels::{self, KernelMethod};
use exact_svar_core::scale_test::{transform_sample, NullCdfSpec, Variant};
use exact_svar_core::specfun::{erf_complex, hermite_he, hyp1f1, reg_lower_gamma, reg_upper_gamma};
use exact_svar_core::uniform_variance::{fhat, UniformVariance};
use exact_svar_core::{gamma_variance, Complex64, EvalConfig, FourierPlan, GammaParent, SeriesTolerance};
use proptest::prelude::*;
use std::sync::OnceLock;

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()) + 1e-300
}

fn uniform(n: usize) -> &'static UniformVariance {
    static CACHE: OnceLock<Vec<UniformVariance>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        (3..=6)
            .map(|n| UniformVariance::new(n, &FourierPlan::default()).unwrap())
            .collect()
    });
    &all[n - 3]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn erf_is_odd(re in -6.0f64..6.0, s in -1.0f64..1.0) {
        let z = Complex64::new(re, s * re);
        let (a, b) = (erf_complex(-z), erf_complex(z));
        prop_assert!((a.re + b.re).abs() <= 1e-13 && (a.im + b.im).abs() <= 1e-13, "{z}: {a} {b}");
    }

    #[test]
    fn erf_schwarz_reflection(re in -6.0f64..6.0, s in -1.0f64..1.0) {
        let z = Complex64::new(re, s * re);
        let (a, b) = (erf_complex(z.conj()), erf_complex(z).conj());
        prop_assert!((a - b).norm() <= 1e-13 * (1.0 + b.norm()), "{z}: {a} {b}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn kummer_transformation(a in 0.05f64..5.0, b in 0.05f64..5.0, x in -20.0f64..20.0) {
        let tol = SeriesTolerance::default();
        let lhs = hyp1f1(a, b, x, tol).unwrap();
        let rhs = x.exp() * hyp1f1(b - a, b, -x, tol).unwrap();
        // near a zero of 1F1 compare against the size of the terms instead
        let scale = lhs.abs().max(rhs.abs()).max(1e-6 * x.exp().max(1.0));
        prop_assert!((lhs - rhs).abs() <= 1e-10 * scale, "a={a} b={b} x={x}: {lhs} vs {rhs}");
    }

    #[test]
    fn lower_plus_upper_gamma_is_one(beta in 0.1f64..20.0, x in 0.001f64..60.0) {
        let lo = reg_lower_gamma(beta, Complex64::new(x, 0.0)).unwrap().re;
        let up = reg_upper_gamma(beta, x).unwrap();
        prop_assert!((lo + up - 1.0).abs() < 1e-12, "beta={beta} x={x}: {lo} + {up}");
    }

    #[test]
    fn kernel_majorant_dominates(beta in 0.6f64..6.0, r in 0.0f64..3.0, z in -3.0f64..3.0) {
        let k = kernels::k_beta(beta, r, z, KernelMethod::Auto, &EvalConfig::default()).unwrap();
        let m = kernels::k_beta_majorant(beta, r, z).unwrap();
        prop_assert!(k.value.abs() < m, "beta={beta} r={r} z={z}: {} vs {m}", k.value);
    }

    #[test]
    fn kernel_tail_bound_dominates(beta in 1.5f64..4.0, x in 0.5f64..2.0, z in 1.0f64..50.0) {
        let cfg = EvalConfig::default();
        let b = kernels::k_beta_tail_bound(beta, x, z).unwrap();
        let k = kernels::k_beta(beta, x.sqrt(), z, KernelMethod::Auto, &cfg).unwrap();
        prop_assert!(k.value.abs() <= b * (1.0 + 1e-9), "beta={beta} x={x} z={z}: {} vs {b}", k.value);
        // the circle contour loses digits for large z but says so
        let c = kernels::k_beta(beta, x.sqrt(), z, KernelMethod::Contour, &cfg).unwrap();
        prop_assert!(c.value.abs() <= b * (1.0 + 1e-9) + c.est_error, "contour {} ± {} vs {b}", c.value, c.est_error);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn fhat_is_a_characteristic_function(n in 3usize..8, t in 0.05f64..200.0) {
        let plan = FourierPlan::default();
        let f = fhat(n, t, &plan).unwrap();
        prop_assert!(f.norm() <= 1.0 + 1e-9, "n={n} t={t}: {f}");
        let g = fhat(n, -t, &plan).unwrap();
        prop_assert!((g - f.conj()).norm() <= 1e-10, "n={n} t={t}: {g} vs {f}");
    }

    #[test]
    fn uniform_cdf_is_nondecreasing(n in 3usize..=6, a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let u = uniform(n);
        let (lo, hi) = (a.min(b) * u.q_max(), a.max(b) * u.q_max());
        let (fl, fh) = (u.cdf(lo).unwrap(), u.cdf(hi).unwrap());
        prop_assert!(fh.value >= fl.value - fl.est_error - fh.est_error, "n={n}: F({lo})={} F({hi})={}", fl.value, fh.value);
        prop_assert!(fl.value >= -1e-9 && fh.value <= 1.0 + 1e-9);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn gamma_cdf_is_nondecreasing(alpha in 0.5f64..4.0, n in 2usize..6, a in 0.05f64..4.0, b in 0.05f64..4.0) {
        let cfg = EvalConfig::default();
        let p = GammaParent::new(alpha, n).unwrap();
        let mean = (n as f64 - 1.0) * alpha;
        let (lo, hi) = (a.min(b) * mean, a.max(b) * mean);
        let fl = gamma_variance::cdf_best_effort(&p, lo, &cfg).unwrap();
        let fh = gamma_variance::cdf_best_effort(&p, hi, &cfg).unwrap();
        prop_assert!(fh.value >= fl.value - fl.est_error - fh.est_error, "F({lo})={} F({hi})={}", fl.value, fh.value);
        prop_assert!(fl.value >= -1e-9 && fh.value <= 1.0 + 1e-9);
    }
}

fn affine_specs(a: f64, b: f64) -> Vec<(NullCdfSpec, NullCdfSpec)> {
    let s = |t: String| NullCdfSpec::parse_builtin(&t).unwrap();
    let knots: Vec<(f64, f64)> = (0..=20).map(|i| (-5.0 + 0.5 * i as f64, i as f64 / 20.0)).collect();
    let moved: Vec<(f64, f64)> = knots.iter().map(|&(y, f)| (a * y + b, f)).collect();
    vec![
        (s("normal:0.3,1.7".into()), s(format!("normal:{},{}", a * 0.3 + b, a * 1.7))),
        (s("logistic:-1,0.5".into()), s(format!("logistic:{},{}", -a + b, a * 0.5))),
        (s("uniform:-6,6".into()), s(format!("uniform:{},{}", -6.0 * a + b, 6.0 * a + b))),
        (NullCdfSpec::table(knots).unwrap(), NullCdfSpec::table(moved).unwrap()),
    ]
}

proptest! {
    #[test]
    fn statistic_invariant_under_reparameterization(
        y in prop::collection::vec(-4.9f64..4.9, 3..12),
        a in 0.1f64..10.0,
        b in -10.0f64..10.0,
    ) {
        let y2: Vec<f64> = y.iter().map(|v| a * v + b).collect();
        for (f0, f1) in affine_specs(a, b) {
            let u = transform_sample(&y, &f0).unwrap();
            let v = transform_sample(&y2, &f1).unwrap();
            for variant in [Variant::Centered, Variant::Half] {
                let (s, t) = (variant.statistic(&u), variant.statistic(&v));
                prop_assert!(close(s, t, 1e-9), "{f0:?}: {s} vs {t}");
            }
        }
    }

    #[test]
    fn statistic_invariant_under_log_map(idx in prop::collection::vec(0usize..199, 3..12)) {
        // piecewise-linear tables are only equivariant at their knots, so
        // the sample is drawn from the knot abscissae
        let knots: Vec<(f64, f64)> = (1..200)
            .map(|i| {
                let q = i as f64 / 200.0;
                (-(1.0 - q).ln(), q)
            })
            .collect();
        let logged: Vec<(f64, f64)> = knots.iter().map(|&(y, q)| (y.ln(), q)).collect();
        let y: Vec<f64> = idx.iter().map(|&i| knots[i].0).collect();
        let w: Vec<f64> = y.iter().map(|v| v.ln()).collect();
        let u = transform_sample(&y, &NullCdfSpec::parse_builtin("exp:1").unwrap()).unwrap();
        let v = transform_sample(&w, &NullCdfSpec::table(logged).unwrap()).unwrap();
        for variant in [Variant::Centered, Variant::Half] {
            let (s, t) = (variant.statistic(&u), variant.statistic(&v));
            prop_assert!(close(s, t, 1e-9), "{s} vs {t}");
        }
    }
}

#[test]
fn hermite_matches_explicit_polynomials() {
    let explicit = |k: usize, z: i64| -> i64 {
        match k {
            0 => 1,
            1 => z,
            2 => z * z - 1,
            3 => z * z * z - 3 * z,
            4 => z.pow(4) - 6 * z * z + 3,
            _ => z.pow(5) - 10 * z.pow(3) + 15 * z,
        }
    };
    for k in 0..=5 {
        for z in -6i64..=6 {
            assert_eq!(hermite_he(k, z as f64), explicit(k, z) as f64, "k={k} z={z}");
        }
    }
}
