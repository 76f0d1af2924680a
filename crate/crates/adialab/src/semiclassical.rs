//! Semiclassical reference models on circles.
//!
//! Two baselines calibrate the geometry modules: the scalar Weyl law for
//! `-h^2 d^2/dx^2 + V` on the unit circle (eigenvalue counts vs phase-space
//! area / 2 pi h), and the operator-valued-symbol version for the product
//! model `Delta_X + eps^2 Delta_Y + V1(x) + V2(y)` on the 2-torus, where the
//! exact heat trace factorizes and the symbol side is an explicit integral.
//! The Stieltjes transform that converts a leafwise counting function into
//! the adiabatic counting prediction lives here too.

use crate::error::{Error, Result};
use crate::numerics::{
    dense_sym_count_leq, dense_sym_eigs, gamma, gaussian_series_tail, integrate_interval,
    integrate_line, pairwise_sum, stieltjes_power_integral, Boundary, Discretization1D,
    LeafwiseCountingFunction, QuadratureSpec, SymmetricMatrix,
};

use std::f64::consts::PI;

/// `-h^2 d^2/dx^2 + V(x)` on the unit circle (circumference 1).
#[derive(Debug, Clone)]
pub struct CircleSchrodinger<V> {
    pub potential: V,
    pub h: f64,
}

impl<V: Fn(f64) -> f64> CircleSchrodinger<V> {
    pub fn new(potential: V, h: f64) -> Result<Self> {
        if !(h > 0.0) {
            return Err(Error::invalid("CircleSchrodinger: h must be positive"));
        }
        Ok(CircleSchrodinger { potential, h })
    }
}

fn periodic_matrix<V: Fn(f64) -> f64>(potential: &V, h: f64, n: usize) -> SymmetricMatrix {
    let dx = 1.0 / n as f64;
    let kin = h * h / (dx * dx);
    let mut m = SymmetricMatrix::zeros(n);
    for i in 0..n {
        m.set_sym(i, i, 2.0 * kin + potential(i as f64 * dx));
        m.set_sym(i, (i + 1) % n, -kin);
    }
    m
}

fn require_periodic(disc: &Discretization1D) -> Result<usize> {
    if disc.boundary() != Boundary::PeriodicUnitCircle {
        return Err(Error::invalid(
            "circle model: discretization must be periodic-unit-circle",
        ));
    }
    Ok(disc.n_points())
}

/// The `k` smallest eigenvalues of the circle operator, second-order finite
/// differences on the periodic grid.
pub fn circle_schrodinger_eigs<V: Fn(f64) -> f64>(
    model: &CircleSchrodinger<V>,
    disc: &Discretization1D,
    k: usize,
) -> Result<Vec<f64>> {
    let n = require_periodic(disc)?;
    dense_sym_eigs(&periodic_matrix(&model.potential, model.h, n), k)
}

/// `#{eigenvalues <= lambda}` of the discretized circle operator.
pub fn circle_count_leq<V: Fn(f64) -> f64>(
    model: &CircleSchrodinger<V>,
    disc: &Discretization1D,
    lambda: f64,
) -> Result<usize> {
    let n = require_periodic(disc)?;
    dense_sym_count_leq(&periodic_matrix(&model.potential, model.h, n), lambda)
}

/// Phase-space area of `{ xi^2 + V(x) <= lambda }` over the unit circle:
/// `int_0^1 2 sqrt(max(0, lambda - V(x))) dx`. Nonnegative and nondecreasing
/// in `lambda`.
pub fn weyl_phase_area_1d<V: Fn(f64) -> f64>(
    model: &CircleSchrodinger<V>,
    lambda: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    let v = &model.potential;
    integrate_interval(|x| 2.0 * (lambda - v(x)).max(0.0).sqrt(), 0.0, 1.0, spec)
}

/// One row of a semiclassical Weyl comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeylCheckRow {
    pub h: f64,
    pub count: usize,
    pub prediction: f64,
    pub ratio: f64,
}

/// Compare `#{eigenvalues <= lambda}` against `area / (2 pi h)` for each `h`
/// in the grid (the model's own `h` is ignored here). Ratios approach 1 as
/// `h` decreases, with number-theoretic fluctuations of order 1/count.
pub fn weyl_check_1d<V: Fn(f64) -> f64>(
    model: &CircleSchrodinger<V>,
    lambda: f64,
    disc: &Discretization1D,
    h_grid: &[f64],
) -> Result<Vec<WeylCheckRow>> {
    let n = require_periodic(disc)?;
    let area = weyl_phase_area_1d(model, lambda, &QuadratureSpec::default())?;
    let mut rows = Vec::with_capacity(h_grid.len());
    for &h in h_grid {
        if !(h > 0.0) {
            return Err(Error::invalid("weyl_check_1d: h must be positive"));
        }
        let count = dense_sym_count_leq(&periodic_matrix(&model.potential, h, n), lambda)?;
        let prediction = area / (2.0 * PI * h);
        rows.push(WeylCheckRow {
            h,
            count,
            prediction,
            ratio: count as f64 / prediction,
        });
    }
    Ok(rows)
}

/// Separable product model `Delta_X + eps^2 Delta_Y + V1(x) + V2(y)` on the
/// unit 2-torus.
#[derive(Debug, Clone)]
pub struct ProductSchrodinger<V1, V2> {
    pub v1: V1,
    pub v2: V2,
    pub epsilon: f64,
}

impl<V1: Fn(f64) -> f64, V2: Fn(f64) -> f64> ProductSchrodinger<V1, V2> {
    pub fn new(v1: V1, v2: V2, epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0) {
            return Err(Error::invalid("ProductSchrodinger: epsilon must be positive"));
        }
        Ok(ProductSchrodinger { v1, v2, epsilon })
    }
}

/// Heat trace of one circle factor, `sum_j exp(-t mu_j)`, with the series
/// truncated once a rigorous eigenvalue lower bound
/// `mu_j >= 16 h^2 ceil(j/2)^2 + min V` pushes the Gaussian tail under
/// `tail_tol` (or the matrix spectrum is exhausted).
pub fn circle_heat_trace<V: Fn(f64) -> f64>(
    potential: &V,
    h: f64,
    t: f64,
    tail_tol: f64,
    disc: &Discretization1D,
) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::invalid("circle_heat_trace: t must be positive"));
    }
    if !(tail_tol > 0.0) {
        return Err(Error::invalid("circle_heat_trace: tail_tol must be positive"));
    }
    let n = require_periodic(disc)?;
    let dx = 1.0 / n as f64;
    let v_min = (0..n).map(|i| potential(i as f64 * dx)).fold(f64::INFINITY, f64::min);

    // smallest eigenvalue index J with tail bound below tolerance
    let rate = 16.0 * t * h * h;
    let weight = (-t * v_min).exp();
    let mut k = n; // fall back to the full spectrum
    let mut j = 1usize;
    while j < n {
        let m = j.div_ceil(2) as u64;
        let bound = weight * 2.0 * ((-rate * (m * m) as f64).exp() + gaussian_series_tail(rate, m));
        if bound < tail_tol {
            k = j;
            break;
        }
        j += 1;
    }

    let model = CircleSchrodinger::new(|x: f64| potential(x), h)?;
    let eigs = circle_schrodinger_eigs(&model, disc, k)?;
    let terms: Vec<f64> = eigs.iter().map(|&mu| (-t * mu).exp()).collect();
    Ok(pairwise_sum(&terms))
}

/// Exact heat trace of the product model,
/// `tr e^{-tH} = (sum_j e^{-t mu_j})(sum_m e^{-t nu_m})`, with `mu` the
/// `h = 1` spectrum of the X factor and `nu` the `h = eps` spectrum of the
/// Y factor; each factor is truncated under `tail_tol`.
pub fn product_lhs_trace<V1: Fn(f64) -> f64, V2: Fn(f64) -> f64>(
    model: &ProductSchrodinger<V1, V2>,
    t: f64,
    tail_tol: f64,
    disc_x: &Discretization1D,
    disc_y: &Discretization1D,
) -> Result<f64> {
    let zx = circle_heat_trace(&model.v1, 1.0, t, tail_tol, disc_x)?;
    let zy = circle_heat_trace(&model.v2, model.epsilon, t, tail_tol, disc_y)?;
    Ok(zx * zy)
}

/// Operator-valued symbol trace of the product model for `f = e^{-t .}`:
///
/// ```text
/// int_0^1 int_R sum_j exp(-t (eta^2 + mu_j + V2(y))) d eta dy
///   = [int_R e^{-t eta^2} d eta] * [sum_j e^{-t mu_j}] * [int_0^1 e^{-t V2} dy],
/// ```
///
/// independent of `eps` (the adiabatic parameter enters only the Weyl
/// prefactor `1/(2 pi eps)`).
pub fn operator_symbol_trace<V1: Fn(f64) -> f64, V2: Fn(f64) -> f64>(
    model: &ProductSchrodinger<V1, V2>,
    t: f64,
    spec: &QuadratureSpec,
    disc_x: &Discretization1D,
) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::invalid("operator_symbol_trace: t must be positive"));
    }
    let eta_integral = integrate_line(|eta| (-t * eta * eta).exp(), t, spec)?;
    let zx = circle_heat_trace(&model.v1, 1.0, t, spec.abs_tol, disc_x)?;
    let v2 = &model.v2;
    let y_integral = integrate_interval(|y| (-t * v2(y)).exp(), 0.0, 1.0, spec)?;
    Ok(eta_integral * zx * y_integral)
}

/// Adiabatic counting prediction from a leafwise counting function:
///
/// ```text
/// eps^q N_eps(lambda) -> (4 pi)^{-q/2} / Gamma(q/2 + 1)
///                        * int_{-inf}^{lambda} (lambda - tau)^{q/2} dN(tau).
/// ```
pub fn adiabatic_counting_from_leafwise(
    nf: &LeafwiseCountingFunction,
    q_codim: u32,
    lambda: f64,
) -> f64 {
    let half_q = q_codim as f64 / 2.0;
    let prefactor = (4.0 * PI).powf(-half_q) / gamma(half_q + 1.0);
    prefactor * stieltjes_power_integral(nf, q_codim, lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn flat(h: f64) -> CircleSchrodinger<fn(f64) -> f64> {
        CircleSchrodinger { potential: |_| 0.0, h }
    }

    #[test]
    fn flat_circle_spectrum() {
        let disc = Discretization1D::periodic(1000).unwrap();
        let eigs = circle_schrodinger_eigs(&flat(1.0), &disc, 3).unwrap();
        assert!(eigs[0].abs() < 1e-7);
        let target = 4.0 * PI * PI;
        assert!((eigs[1] / target - 1.0).abs() < 1e-3, "{}", eigs[1]);
        assert!((eigs[2] / target - 1.0).abs() < 1e-3);
        assert_abs_diff_eq!(eigs[1], 39.478, epsilon = 0.05);
    }

    #[test]
    fn constant_potential_shifts_exactly() {
        let disc = Discretization1D::periodic(300).unwrap();
        let base = circle_schrodinger_eigs(&flat(0.5), &disc, 4).unwrap();
        let c = 2.75;
        let shifted = CircleSchrodinger { potential: move |_| c, h: 0.5 };
        let eigs = circle_schrodinger_eigs(&shifted, &disc, 4).unwrap();
        for (a, b) in base.iter().zip(&eigs) {
            assert_abs_diff_eq!(a + c, *b, epsilon = 1e-9);
        }
    }

    #[test]
    fn cosine_potential_matches_refined_grid_oracle() {
        let disc = Discretization1D::periodic(1200).unwrap();
        let model = CircleSchrodinger { potential: |x: f64| (2.0 * PI * x).cos(), h: 0.1 };
        let eigs = circle_schrodinger_eigs(&model, &disc, 5).unwrap();
        for (ev, gold) in eigs.iter().zip(golden::CIRCLE_COS_H01_EIGS.iter()) {
            assert_abs_diff_eq!(ev, gold, epsilon = 1e-4);
        }
    }

    #[test]
    fn requires_periodic_discretization() {
        let disc = Discretization1D::dirichlet(1.0, 100).unwrap();
        assert!(circle_schrodinger_eigs(&flat(1.0), &disc, 2).is_err());
    }

    #[test]
    fn phase_area_flat_and_empty() {
        let spec = QuadratureSpec::default();
        let v = weyl_phase_area_1d(&flat(1.0), 4.0, &spec).unwrap();
        assert_relative_eq!(v, 4.0, max_relative = 1e-10);
        let w = weyl_phase_area_1d(
            &CircleSchrodinger { potential: |_| 1.0, h: 1.0 },
            0.5,
            &spec,
        )
        .unwrap();
        assert_eq!(w, 0.0);
    }

    #[test]
    fn phase_area_cosine_against_golden_and_monte_carlo() {
        let spec = QuadratureSpec::default();
        let model = CircleSchrodinger { potential: |x: f64| (2.0 * PI * x).cos(), h: 1.0 };
        let v = weyl_phase_area_1d(&model, 2.0, &spec).unwrap();
        assert_relative_eq!(v, golden::CIRCLE_COS_AREA_LAMBDA2, max_relative = 1e-9);

        // Monte Carlo hit-count over the box [0,1] x [-Xi, Xi]
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let xi_max = 3.0f64.sqrt() * 1.001;
        let n = 4_000_000u64;
        let mut hits = 0u64;
        for _ in 0..n {
            let x: f64 = rng.gen::<f64>();
            let xi = (2.0 * rng.gen::<f64>() - 1.0) * xi_max;
            if xi * xi + (2.0 * PI * x).cos() <= 2.0 {
                hits += 1;
            }
        }
        let mc = hits as f64 / n as f64 * 2.0 * xi_max;
        assert!((mc / v - 1.0).abs() < 0.005, "mc {mc} vs quad {v}");
    }

    #[test]
    fn flat_circle_weyl_count_exact_formula() {
        let disc = Discretization1D::periodic(1000).unwrap();
        let rows = weyl_check_1d(&flat(1.0), 1.0, &disc, &[0.01]).unwrap();
        let row = &rows[0];
        // exact spectrum count: 1 + 2 floor(sqrt(lambda)/(2 pi h)) = 31
        assert_eq!(row.count, 31);
        assert_relative_eq!(row.prediction, 2.0 / (2.0 * PI * 0.01), max_relative = 1e-10);
        assert_abs_diff_eq!(row.prediction, 31.83, epsilon = 0.01);
        assert!((row.ratio - 1.0).abs() < 0.04, "ratio {}", row.ratio);
    }

    #[test]
    fn flat_circle_ratio_tends_to_one() {
        let disc = Discretization1D::periodic(600).unwrap();
        let rows = weyl_check_1d(&flat(1.0), 1.0, &disc, &[0.08, 0.04, 0.02]).unwrap();
        for row in &rows {
            // |count - prediction| <= 3 for the flat circle
            assert!(
                (row.count as f64 - row.prediction).abs() <= 3.0,
                "h = {}: count {} vs {}",
                row.h,
                row.count,
                row.prediction
            );
        }
    }

    #[test]
    fn cosine_weyl_ratios() {
        let disc = Discretization1D::periodic(1000).unwrap();
        let model = CircleSchrodinger { potential: |x: f64| (2.0 * PI * x).cos(), h: 1.0 };
        let rows = weyl_check_1d(&model, 2.0, &disc, &[0.04, 0.02, 0.01]).unwrap();
        // fluctuations of one eigenvalue keep this from being monotone;
        // the h = 0.01 cell must sit within 3%
        for row in &rows {
            assert!((row.ratio - 1.0).abs() < 0.06, "h = {}: ratio {}", row.h, row.ratio);
        }
        assert!((rows[2].ratio - 1.0).abs() < 0.03, "ratio {}", rows[2].ratio);
        // oracle counts: 11, 23, 45
        assert_eq!(rows[0].count, 11);
        assert_eq!(rows[1].count, 23);
        assert_eq!(rows[2].count, 45);
    }

    #[test]
    fn product_trace_flat_unit_eps() {
        let model = ProductSchrodinger::new(|_| 0.0, |_| 0.0, 1.0).unwrap();
        let disc = Discretization1D::periodic(400).unwrap();
        let v = product_lhs_trace(&model, 1.0, 1e-12, &disc, &disc).unwrap();
        // (sum_j e^{-4 pi^2 j^2})^2 = 1 + 4e-17...
        assert_abs_diff_eq!(v, 1.0, epsilon = 1e-7);
        // separable trace factorizes exactly into the two 1D traces
        let zx = circle_heat_trace(&|_: f64| 0.0, 1.0, 1.0, 1e-12, &disc).unwrap();
        let zy = circle_heat_trace(&|_: f64| 0.0, 1.0, 1.0, 1e-12, &disc).unwrap();
        assert_eq!(v, zx * zy);
    }

    #[test]
    fn product_trace_constant_shift() {
        let disc = Discretization1D::periodic(400).unwrap();
        let base = product_lhs_trace(
            &ProductSchrodinger::new(|_| 0.0, |_| 0.0, 0.25).unwrap(),
            0.8,
            1e-12,
            &disc,
            &disc,
        )
        .unwrap();
        let shifted = product_lhs_trace(
            &ProductSchrodinger::new(|_| 0.6, |_| 1.1, 0.25).unwrap(),
            0.8,
            1e-12,
            &disc,
            &disc,
        )
        .unwrap();
        assert_relative_eq!(shifted, (-0.8f64 * 1.7).exp() * base, max_relative = 1e-8);
    }

    #[test]
    fn product_trace_riemann_limit() {
        // eps = 0.1: the Y factor approaches (1/(2 pi eps)) sqrt(pi/t)
        let model = ProductSchrodinger::new(|_| 0.0, |_| 0.0, 0.1).unwrap();
        let disc_x = Discretization1D::periodic(300).unwrap();
        let disc_y = Discretization1D::periodic(600).unwrap();
        let v = product_lhs_trace(&model, 1.0, 1e-12, &disc_x, &disc_y).unwrap();
        let zx = circle_heat_trace(&|_: f64| 0.0, 1.0, 1.0, 1e-12, &disc_x).unwrap();
        let pred = zx / (2.0 * PI * 0.1) * PI.sqrt();
        assert!((v / pred - 1.0).abs() < 0.02, "v {v} vs {pred}");
    }

    #[test]
    fn symbol_trace_flat_and_shift() {
        let spec = QuadratureSpec::default();
        let disc_x = Discretization1D::periodic(300).unwrap();
        let model = ProductSchrodinger::new(|_| 0.0, |_| 0.0, 0.3).unwrap();
        let v = operator_symbol_trace(&model, 1.0, &spec, &disc_x).unwrap();
        // sqrt(pi) * theta-series; the series is 1 + 1.4e-17
        assert_relative_eq!(v, PI.sqrt(), max_relative = 1e-8);
        assert_abs_diff_eq!(v, 1.7724539, epsilon = 5e-7);

        // eps enters nowhere
        let other = ProductSchrodinger::new(|_| 0.0, |_| 0.0, 0.05).unwrap();
        let w = operator_symbol_trace(&other, 1.0, &spec, &disc_x).unwrap();
        assert_eq!(v, w);

        // constant V2 pulls out e^{-tc}
        let c = 0.9f64;
        let shifted = ProductSchrodinger::new(|_| 0.0, move |_| c, 0.3).unwrap();
        let s = operator_symbol_trace(&shifted, 1.0, &spec, &disc_x).unwrap();
        assert_relative_eq!(s, (-c).exp() * v, max_relative = 1e-9);
    }

    #[test]
    fn weyl_op_prediction_ratio_tends_to_one() {
        let spec = QuadratureSpec::default();
        let disc_x = Discretization1D::periodic(300).unwrap();
        let disc_y = Discretization1D::periodic(800).unwrap();
        let t = 1.0;
        let mut samples = Vec::new();
        for &eps in &[0.2, 0.1, 0.05] {
            let model = ProductSchrodinger::new(|_| 0.0, |_| 0.0, eps).unwrap();
            let lhs = product_lhs_trace(&model, t, 1e-12, &disc_x, &disc_y).unwrap();
            samples.push((eps, lhs));
        }
        let fit = crate::numerics::fit_power_law(&samples).unwrap();
        assert!((fit.exponent - 1.0).abs() < 0.01, "exponent {}", fit.exponent);
        let model = ProductSchrodinger::new(|_| 0.0, |_| 0.0, 1.0).unwrap();
        let sym = operator_symbol_trace(&model, t, &spec, &disc_x).unwrap();
        assert!(
            (fit.coefficient / (sym / (2.0 * PI)) - 1.0).abs() < 0.01,
            "coefficient {} vs {}",
            fit.coefficient,
            sym / (2.0 * PI)
        );
    }

    #[test]
    fn adiabatic_counting_square_root_law() {
        // N(tau) = sqrt(tau)/pi with q = 1 must give exactly lambda/(4 pi)
        let nf = LeafwiseCountingFunction::power_law(1.0 / PI, 0.5).unwrap();
        for &lambda in &[1.0, 4.0, 10.0] {
            let v = adiabatic_counting_from_leafwise(&nf, 1, lambda);
            assert_relative_eq!(v, lambda / (4.0 * PI), max_relative = 1e-12);
        }
        assert_abs_diff_eq!(
            adiabatic_counting_from_leafwise(&nf, 1, 10.0),
            0.7957747,
            epsilon = 5e-8
        );
    }

    #[test]
    fn adiabatic_counting_atom_case() {
        let nf = LeafwiseCountingFunction::jumps(vec![(0.0, 1.0)]).unwrap();
        let v = adiabatic_counting_from_leafwise(&nf, 2, 3.0);
        assert_relative_eq!(v, 3.0 / (4.0 * PI), max_relative = 1e-13);
        assert_abs_diff_eq!(v, 0.2387324, epsilon = 5e-8);
        assert_eq!(adiabatic_counting_from_leafwise(&nf, 2, -1.0), 0.0);
    }
}
