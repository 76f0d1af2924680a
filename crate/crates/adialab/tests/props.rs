//! Property tests for the numerical kernels: linearity and symmetry of the
//! quadrature, agreement of the two eigensolver routes, exact power-law
//! recovery, and monotonicity of the Stieltjes integrals.

use adialab::{
    dense_sym_eigs, fit_power_law, integrate_line, stieltjes_power_integral, sym_tridiag_eigs,
    LeafwiseCountingFunction, QuadratureSpec, SymmetricMatrix,
};
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = f64> {
    prop_oneof![-3.0..3.0f64]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn integrate_line_is_linear(
        a0 in coeff(), a1 in coeff(), a2 in coeff(),
        b0 in coeff(), b1 in coeff(),
        s in 0.5..2.0f64, c in -2.0..2.0f64,
    ) {
        let spec = QuadratureSpec::default();
        let f = move |x: f64| (a0 + a1 * x + a2 * x * x) * (-s * x * x).exp();
        let g = move |x: f64| (b0 + b1 * x.cos()) * (-s * x * x).exp();
        let int_f = integrate_line(f, s, &spec).unwrap();
        let int_g = integrate_line(g, s, &spec).unwrap();
        let combined = integrate_line(move |x| 2.0 * f(x) + c * g(x), s, &spec).unwrap();
        let expected = 2.0 * int_f + c * int_g;
        let tol = spec.abs_tol.max(spec.rel_tol * expected.abs()) * 10.0;
        prop_assert!((combined - expected).abs() <= tol,
            "combined {combined} vs {expected}");
    }

    #[test]
    fn integrate_line_kills_odd_integrands(
        a1 in coeff(), a3 in coeff(), s in 0.5..2.0f64,
    ) {
        let spec = QuadratureSpec::default();
        let v = integrate_line(
            move |x| (a1 * x + a3 * x * x * x) * (-s * x * x).exp(),
            s,
            &spec,
        )
        .unwrap();
        prop_assert!(v.abs() < spec.abs_tol * 10.0, "odd integral {v}");
    }

    #[test]
    fn tridiag_and_dense_routes_agree(
        diag in prop::collection::vec(-5.0..5.0f64, 2..50),
        seed in 0u64..1000,
    ) {
        let n = diag.len();
        // derive the off-diagonal deterministically from the seed
        let off: Vec<f64> = (0..n - 1)
            .map(|i| {
                let x = ((seed + i as u64) * 2654435761 % 1000) as f64 / 500.0 - 1.0;
                x * 2.0
            })
            .collect();
        let k = (n / 2).max(1);
        let tri = sym_tridiag_eigs(&diag, &off, k).unwrap();
        let mut m = SymmetricMatrix::zeros(n);
        for i in 0..n {
            m.set_sym(i, i, diag[i]);
            if i + 1 < n {
                m.set_sym(i, i + 1, off[i]);
            }
        }
        let dense = dense_sym_eigs(&m, k).unwrap();
        let scale = diag.iter().chain(off.iter()).fold(1.0f64, |s, &v| s.max(v.abs()));
        for (i, (a, b)) in tri.iter().zip(&dense).enumerate() {
            prop_assert!((a - b).abs() <= 1e-8 * scale,
                "eigenvalue {i}: tridiag {a} vs dense {b}");
        }
        // ascending with multiplicity, exactly k of them
        prop_assert_eq!(tri.len(), k);
        for w in tri.windows(2) {
            prop_assert!(w[0] <= w[1] + 1e-12 * scale);
        }
    }

    #[test]
    fn power_law_fit_recovers_exact_laws(
        c in 0.1..50.0f64,
        gamma in -2.0..3.0f64,
        n in 2usize..7,
    ) {
        let samples: Vec<(f64, f64)> = (0..n)
            .map(|i| {
                let eps = 0.3 / (1.6f64.powi(i as i32));
                (eps, c * eps.powf(-gamma))
            })
            .collect();
        let fit = fit_power_law(&samples).unwrap();
        prop_assert!((fit.coefficient - c).abs() <= 1e-10 * c);
        prop_assert!((fit.exponent - gamma).abs() <= 1e-10);
        prop_assert!(fit.residual < 1e-12);
    }

    #[test]
    fn stieltjes_monotone_and_supported(
        jumps in prop::collection::vec((0.0..8.0f64, 0.1..2.0f64), 1..6),
        q in 1u32..4,
    ) {
        let mut sorted = jumps.clone();
        sorted.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let nf = LeafwiseCountingFunction::jumps(sorted.clone()).unwrap();
        let first = sorted[0].0;
        // vanishes strictly below the support
        prop_assert_eq!(stieltjes_power_integral(&nf, q, first - 1e-9 - 1.0), 0.0);
        let mut prev = -1.0;
        for i in 0..40 {
            let lambda = -1.0 + i as f64 * 0.3;
            let v = stieltjes_power_integral(&nf, q, lambda);
            prop_assert!(v >= prev - 1e-12, "not monotone at {lambda}");
            prev = v;
        }
    }

    #[test]
    fn mehler_kernel_symmetric_in_x_y(
        omega in -3.0..3.0f64, t in 0.1..3.0f64,
        x in -2.0..2.0f64, y in -2.0..2.0f64,
    ) {
        let p = adialab::MehlerParams { omega, t };
        let k_xy = adialab::mehler_kernel(&p, x, y);
        let k_yx = adialab::mehler_kernel(&p, y, x);
        prop_assert_eq!(k_xy, k_yx);
        prop_assert!(k_xy > 0.0);
    }

    #[test]
    fn torus_counting_monotone_in_lambda(
        alpha in -2.0..2.0f64,
        eps in 0.1..1.0f64,
        lambda in 10.0..300.0f64,
    ) {
        let p = adialab::TorusParams::new(alpha, eps).unwrap();
        let lo = adialab::torus_counting(&p, lambda * 0.7).unwrap();
        let hi = adialab::torus_counting(&p, lambda).unwrap();
        prop_assert!(hi >= lo);
    }
}
