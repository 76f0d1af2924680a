//! Invariant flows on the Heisenberg manifold.
//!
//! The leafwise principal symbol restricted to a leaf is a shifted harmonic
//! oscillator `-d^2/ds^2 + (p2 - s p3)^2 + p3^2`, so its heat kernel is the
//! Mehler kernel. Integrating the diagonal kernel over the conormal fibers
//! gives the transverse symbol trace, once as a genuine 2D integral and once
//! reduced to one dimension by the Gaussian p2-integration:
//!
//! ```text
//! tr = (1/2) int_R  p/sinh(p t) * exp(-p^2 t) dp .
//! ```
//!
//! The heat-trace asymptotics of the full operator carry the same integral
//! with prefactor 1/(8 pi^2 eps^2), which is exactly the noncommutative Weyl
//! right-hand side (2 pi eps)^{-2} tr. The module checks all three routes
//! against each other; the true spectrum of the manifold Laplacian is out of
//! reach at desk scale, so internal consistency is the verifiable content.

use crate::error::{Error, Result};
use crate::numerics::{integrate_line, integrate_plane, tanhc, x_over_sinh, QuadratureSpec};
use crate::torus::nc_weyl_prediction;

use std::f64::consts::PI;

/// Slope of the invariant flow and the adiabatic data. The trace integrals
/// below do not depend on `alpha`; it is carried for reporting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeisenbergParams {
    pub alpha: f64,
    pub t: f64,
    pub epsilon: f64,
}

impl HeisenbergParams {
    pub fn new(alpha: f64, t: f64, epsilon: f64) -> Result<Self> {
        if !(t > 0.0) {
            return Err(Error::invalid("HeisenbergParams: t must be positive"));
        }
        if !(epsilon > 0.0) {
            return Err(Error::invalid("HeisenbergParams: epsilon must be positive"));
        }
        Ok(HeisenbergParams { alpha, t, epsilon })
    }
}

/// Oscillator frequency and time for the Mehler heat kernel. The formulas
/// are even in `omega`; `omega = 0` is the free kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MehlerParams {
    pub omega: f64,
    pub t: f64,
}

impl MehlerParams {
    pub fn new(omega: f64, t: f64) -> Result<Self> {
        if !(t > 0.0) {
            return Err(Error::invalid("MehlerParams: t must be positive"));
        }
        Ok(MehlerParams { omega, t })
    }
}

/// Heat kernel of the harmonic oscillator `-d^2/dx^2 + omega^2 x^2`:
///
/// ```text
/// H_t(x, y) = (4 pi t)^{-1/2} (r/sinh r)^{1/2}
///             exp( -[ (r/sinh r) (cosh r (x^2+y^2) - 2xy) ] / (4t) ),   r = 2 omega t.
/// ```
///
/// Continuous through `omega = 0` (free kernel); computed in log space once
/// `|2 omega t| > 700` so `sinh` never overflows.
pub fn mehler_kernel(params: &MehlerParams, x: f64, y: f64) -> f64 {
    let t = params.t;
    let r = 2.0 * params.omega.abs() * t;
    let norm = (4.0 * PI * t).powf(-0.5);
    if r <= 700.0 {
        let c = x_over_sinh(r);
        let quad = c * (r.cosh() * (x * x + y * y) - 2.0 * x * y);
        norm * c.sqrt() * (-quad / (4.0 * t)).exp()
    } else {
        // ln(r/sinh r) = ln(2r) - r + ln(1/(1 - e^{-2r})); the last term is
        // below 1e-300 here. c*cosh r = r coth r ~ r; the cross term 2cxy
        // carries a factor < e^{-700} and is dropped.
        let ln_c = (2.0 * r).ln() - r;
        let ln_k = norm.ln() + 0.5 * ln_c - r * (x * x + y * y) / (4.0 * t);
        ln_k.exp()
    }
}

/// Oscillator heat trace `sum_{n <= n_max} exp(-(2n+1)|omega| t)`.
///
/// Summation stops once the geometric tail drops below 1e-14; `n_max` is a
/// hard cap, and an insufficient cap is an error rather than a silent
/// truncation. Equals `1/(2 sinh(|omega| t))` in closed form.
pub fn oscillator_heat_trace(params: &MehlerParams, n_max: u32) -> Result<f64> {
    if params.omega == 0.0 {
        return Err(Error::invalid(
            "oscillator_heat_trace: omega = 0 has divergent trace",
        ));
    }
    let wt = params.omega.abs() * params.t;
    let ratio = (-2.0 * wt).exp();
    let mut term = (-wt).exp();
    let mut sum = 0.0;
    for _ in 0..=n_max {
        sum += term;
        term *= ratio;
        let tail = term / (1.0 - ratio);
        if tail < 1e-14 {
            return Ok(sum);
        }
    }
    Err(Error::TailBound {
        requested: 1e-14,
        achieved: term / (1.0 - ratio),
    })
}

/// Diagonal of the leafwise symbol heat kernel on the conormal fiber:
///
/// ```text
/// k_t(p2, p3) = (4 pi t)^{-1/2} (2 p3 t / sinh(2 p3 t))^{1/2} e^{-p3^2 t}
///               exp( -tanh(p3 t) p2^2 / p3 ),
/// ```
///
/// a total function: at `p3 = 0` the continuous extension
/// `(4 pi t)^{-1/2} e^{-t p2^2}` is returned.
pub fn heisenberg_diagonal_kernel(t: f64, p2: f64, p3: f64) -> f64 {
    let norm = (4.0 * PI * t).powf(-0.5);
    let r = 2.0 * p3.abs() * t;
    // tanh(p3 t) p2^2 / p3 = t * tanhc(p3 t) * p2^2, even in p3
    let gauss_p2 = t * tanhc(p3 * t) * p2 * p2;
    if r <= 700.0 {
        norm * x_over_sinh(r).sqrt() * (-p3 * p3 * t).exp() * (-gauss_p2).exp()
    } else {
        let ln_c = (2.0 * r).ln() - r;
        (norm.ln() + 0.5 * ln_c - p3 * p3 * t - gauss_p2).exp()
    }
}

/// Transverse symbol trace as the full 2D fiber integral of the diagonal
/// kernel (the unit-volume base manifold contributes a factor 1).
pub fn heisenberg_symbol_trace_2d(t: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::invalid("heisenberg_symbol_trace_2d: t must be positive"));
    }
    integrate_plane(|p2, p3| heisenberg_diagonal_kernel(t, p2, p3), t, spec)
}

/// Transverse symbol trace after analytic `p2`-integration:
/// `(1/2) int_R p/sinh(p t) e^{-p^2 t} dp`, integrand patched to `1/t` at 0.
pub fn heisenberg_symbol_trace_reduced(t: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::invalid(
            "heisenberg_symbol_trace_reduced: t must be positive",
        ));
    }
    let v = integrate_line(
        |p| x_over_sinh(p * t) / t * (-p * p * t).exp(),
        t,
        spec,
    )?;
    Ok(0.5 * v)
}

/// Leading-order heat trace of the manifold Laplacian in the adiabatic
/// limit: `(1 / (8 pi^2 eps^2)) int_R eta/sinh(t eta) e^{-t eta^2} d eta`.
pub fn heisenberg_heat_trace_prediction(t: f64, epsilon: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::invalid(
            "heisenberg_heat_trace_prediction: t must be positive",
        ));
    }
    if !(epsilon > 0.0) {
        return Err(Error::invalid(
            "heisenberg_heat_trace_prediction: epsilon must be positive",
        ));
    }
    let integral = integrate_line(
        |eta| x_over_sinh(eta * t) / t * (-eta * eta * t).exp(),
        t,
        spec,
    )?;
    Ok(integral / (8.0 * PI * PI * epsilon * epsilon))
}

/// Three-route consistency data for one `(t, eps)` cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConsistencyReport {
    pub t: f64,
    pub epsilon: f64,
    /// 2D fiber integral of the diagonal kernel.
    pub trace_2d: f64,
    /// Reduced 1D integral.
    pub trace_reduced: f64,
    /// Heat-trace prediction rescaled by `(2 pi eps)^2` back to symbol-trace
    /// normalization.
    pub prediction_rescaled: f64,
    /// Largest pairwise relative discrepancy among the three.
    pub max_rel_discrepancy: f64,
    pub pass: bool,
}

/// Tolerance for the three-route agreement.
pub const CONSISTENCY_TOL: f64 = 1e-7;

/// Evaluate the 2D trace, the reduced trace, and the rescaled heat-trace
/// prediction; they must agree pairwise to [`CONSISTENCY_TOL`].
pub fn heisenberg_consistency_report(
    t: f64,
    epsilon: f64,
    spec: &QuadratureSpec,
) -> Result<ConsistencyReport> {
    let trace_2d = heisenberg_symbol_trace_2d(t, spec)?;
    let trace_reduced = heisenberg_symbol_trace_reduced(t, spec)?;
    let prediction = heisenberg_heat_trace_prediction(t, epsilon, spec)?;
    let prediction_rescaled = prediction * (2.0 * PI * epsilon).powi(2);
    // sanity: the prediction is exactly the nc-Weyl value of the reduced trace
    debug_assert!(
        (nc_weyl_prediction(2, epsilon, trace_reduced) - prediction).abs()
            <= 1e-12 * prediction.abs()
    );

    let vals = [trace_2d, trace_reduced, prediction_rescaled];
    let mut max_rel = 0.0f64;
    for i in 0..3 {
        for j in (i + 1)..3 {
            let scale = vals[i].abs().max(vals[j].abs());
            max_rel = max_rel.max((vals[i] - vals[j]).abs() / scale);
        }
    }
    Ok(ConsistencyReport {
        t,
        epsilon,
        trace_2d,
        trace_reduced,
        prediction_rescaled,
        max_rel_discrepancy: max_rel,
        pass: max_rel <= CONSISTENCY_TOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden;
    use crate::numerics::integrate_interval;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn free_kernel_limit() {
        let p = MehlerParams::new(0.0, 1.0).unwrap();
        let v = mehler_kernel(&p, 1.0, 0.0);
        assert_relative_eq!(
            v,
            (4.0 * PI).powf(-0.5) * (-0.25f64).exp(),
            max_relative = 1e-14
        );
        assert_abs_diff_eq!(v, 0.2196956, epsilon = 5e-8);
    }

    #[test]
    fn oscillator_kernel_at_origin() {
        let p = MehlerParams::new(1.0, 1.0).unwrap();
        let v = mehler_kernel(&p, 0.0, 0.0);
        assert_relative_eq!(
            v,
            (4.0 * PI).powf(-0.5) * (2.0 / 2.0f64.sinh()).sqrt(),
            max_relative = 1e-14
        );
        assert_abs_diff_eq!(v, 0.2095, epsilon = 5e-5);
    }

    #[test]
    fn kernel_symmetry_in_arguments() {
        let p = MehlerParams::new(0.8, 0.7).unwrap();
        for &(x, y) in &[(0.3, -1.2), (2.0, 0.1), (-0.7, -0.9)] {
            assert_eq!(mehler_kernel(&p, x, y), mehler_kernel(&p, y, x));
        }
    }

    #[test]
    fn kernel_survives_extreme_frequencies() {
        let p = MehlerParams::new(1000.0, 1.0).unwrap();
        let v = mehler_kernel(&p, 0.1, 0.1);
        assert!(v >= 0.0 && v.is_finite());
        // continuity across the log-space threshold
        let below = mehler_kernel(&MehlerParams::new(349.9, 1.0).unwrap(), 0.2, -0.1);
        let above = mehler_kernel(&MehlerParams::new(350.05, 1.0).unwrap(), 0.2, -0.1);
        assert!(below >= above && above >= 0.0);
    }

    #[test]
    fn oscillator_trace_closed_form_and_scaling() {
        let v = oscillator_heat_trace(&MehlerParams::new(1.0, 1.0).unwrap(), 10_000).unwrap();
        assert_relative_eq!(v, 1.0 / (2.0 * 1.0f64.sinh()), max_relative = 1e-13);
        assert_abs_diff_eq!(v, 0.4254590, epsilon = 1e-7);
        // depends on omega * t only
        let w = oscillator_heat_trace(&MehlerParams::new(2.0, 0.5).unwrap(), 10_000).unwrap();
        assert_relative_eq!(v, w, max_relative = 1e-14);
        assert!(oscillator_heat_trace(&MehlerParams::new(0.0, 1.0).unwrap(), 100).is_err());
        // cap too small for a slowly converging series
        assert!(matches!(
            oscillator_heat_trace(&MehlerParams::new(1e-4, 1.0).unwrap(), 3),
            Err(Error::TailBound { .. })
        ));
    }

    #[test]
    fn mehler_trace_identity_against_quadrature() {
        let spec = QuadratureSpec::default();
        for &omega in &[0.5, 1.0, 2.0] {
            for &t in &[0.5, 1.0, 2.0] {
                let p = MehlerParams::new(omega, t).unwrap();
                // the diagonal decays like exp(-omega tanh(omega t) x^2);
                // use that rate for the truncation policy
                let rate = omega * (omega * t).tanh();
                let quad = integrate_line(|x| mehler_kernel(&p, x, x), rate, &spec).unwrap();
                let closed = 1.0 / (2.0 * (omega * t).sinh());
                assert_relative_eq!(quad, closed, max_relative = 1e-8);
            }
        }
    }

    #[test]
    fn chapman_kolmogorov_spot_check() {
        let spec = QuadratureSpec::default();
        let (omega, t, s, x, y) = (1.3, 0.4, 0.7, 0.3, -0.5);
        let pt = MehlerParams::new(omega, t).unwrap();
        let ps = MehlerParams::new(omega, s).unwrap();
        let pts = MehlerParams::new(omega, t + s).unwrap();
        let conv = integrate_interval(
            |z| mehler_kernel(&pt, x, z) * mehler_kernel(&ps, z, y),
            -30.0,
            30.0,
            &spec,
        )
        .unwrap();
        assert_relative_eq!(conv, mehler_kernel(&pts, x, y), max_relative = 1e-6);
    }

    #[test]
    fn diagonal_kernel_removable_point() {
        let v = heisenberg_diagonal_kernel(1.0, 0.0, 0.0);
        assert_relative_eq!(v, (4.0 * PI).powf(-0.5), max_relative = 1e-14);
        assert_abs_diff_eq!(v, 0.2820948, epsilon = 5e-8);
        // p3 = 0 line equals the free Gaussian in p2
        for &p2 in &[0.3, 1.7] {
            assert_relative_eq!(
                heisenberg_diagonal_kernel(2.0, p2, 0.0),
                (8.0 * PI).powf(-0.5) * (-2.0 * p2 * p2).exp(),
                max_relative = 1e-13
            );
        }
    }

    #[test]
    fn diagonal_kernel_against_mehler_factorization() {
        // k_t(p2, p3) = e^{-p3^2 t} H_t^{p3}(-p2/p3, -p2/p3)
        let cases = [
            (1.0, 0.0, 1.0),
            (1.0, 0.7, 1.3),
            (0.4, -1.1, 0.6),
            (2.5, 0.3, -0.8),
            (1.7, 2.0, 0.05),
        ];
        for &(t, p2, p3) in &cases {
            let direct = heisenberg_diagonal_kernel(t, p2, p3);
            let mp = MehlerParams::new(p3, t).unwrap();
            let via_mehler = (-p3 * p3 * t).exp() * mehler_kernel(&mp, -p2 / p3, -p2 / p3);
            assert_relative_eq!(direct, via_mehler, max_relative = 1e-12);
        }
        let spot = heisenberg_diagonal_kernel(1.0, 0.0, 1.0);
        assert_abs_diff_eq!(spot, 0.0770638, epsilon = 5e-7);
    }

    #[test]
    fn diagonal_kernel_even_in_both_fibers() {
        for &(t, p2, p3) in &[(0.9, 1.2, 0.4), (1.5, -0.3, 2.0), (0.2, 0.6, -1.7)] {
            let v = heisenberg_diagonal_kernel(t, p2, p3);
            assert_eq!(v, heisenberg_diagonal_kernel(t, -p2, p3));
            assert_eq!(v, heisenberg_diagonal_kernel(t, p2, -p3));
        }
    }

    #[test]
    fn reduced_trace_matches_golden_value() {
        let spec = QuadratureSpec::default();
        let v = heisenberg_symbol_trace_reduced(1.0, &spec).unwrap();
        assert_relative_eq!(v, golden::REDUCED_TRACE_T1, max_relative = 1e-11);
        for &(t, expected) in golden::REDUCED_TRACE_GRID.iter() {
            let v = heisenberg_symbol_trace_reduced(t, &spec).unwrap();
            assert_relative_eq!(v, expected, max_relative = 1e-10, epsilon = 1e-13);
        }
    }

    #[test]
    fn reduced_trace_small_t_limit() {
        let spec = QuadratureSpec::default();
        let t = 0.01;
        let v = heisenberg_symbol_trace_reduced(t, &spec).unwrap();
        let limit = 0.5 / t * (PI / t).sqrt();
        assert!((v / limit - 1.0).abs() < 0.01, "v = {v}, limit = {limit}");
        // strictly below the limit for every t (x/sinh x < 1)
        for &t in &[0.1, 1.0, 3.0] {
            let v = heisenberg_symbol_trace_reduced(t, &spec).unwrap();
            assert!(v < 0.5 / t * (PI / t).sqrt());
        }
    }

    #[test]
    fn two_dimensional_route_agrees_with_reduced() {
        let spec = QuadratureSpec::default();
        for &t in &[0.1, 0.5, 1.0, 2.0, 5.0] {
            let v2 = heisenberg_symbol_trace_2d(t, &spec).unwrap();
            let v1 = heisenberg_symbol_trace_reduced(t, &spec).unwrap();
            assert_relative_eq!(v2, v1, max_relative = 1e-8);
            assert!(v2 > 0.0);
        }
    }

    #[test]
    fn traces_decrease_in_t() {
        let spec = QuadratureSpec::default();
        let ts = [1.0, 1.5, 2.5, 4.0, 6.0];
        let mut prev = f64::INFINITY;
        for &t in &ts {
            let v = heisenberg_symbol_trace_2d(t, &spec).unwrap();
            assert!(v < prev, "trace not decreasing at t = {t}");
            prev = v;
        }
    }

    #[test]
    fn prediction_prefactor_identity() {
        // (2 pi eps)^{-2} * reduced == prediction, as a prefactor identity
        let spec = QuadratureSpec::default();
        let (t, eps) = (1.0, 0.1);
        let reduced = heisenberg_symbol_trace_reduced(t, &spec).unwrap();
        let pred = heisenberg_heat_trace_prediction(t, eps, &spec).unwrap();
        assert_relative_eq!(
            nc_weyl_prediction(2, eps, reduced),
            pred,
            max_relative = 1e-12
        );
        // golden spot value: (1/(8 pi^2 eps^2)) * 2 J
        assert_relative_eq!(
            pred,
            2.0 * golden::REDUCED_TRACE_T1 / (8.0 * PI * PI * eps * eps),
            max_relative = 1e-10
        );
    }

    #[test]
    fn prediction_epsilon_scaling() {
        let spec = QuadratureSpec::default();
        let a = heisenberg_heat_trace_prediction(1.0, 0.2, &spec).unwrap();
        let b = heisenberg_heat_trace_prediction(1.0, 0.1, &spec).unwrap();
        assert_relative_eq!(b, 4.0 * a, max_relative = 1e-12);
    }

    #[test]
    fn consistency_report_grid() {
        let spec = QuadratureSpec::default();
        for &t in &[0.1, 1.0, 5.0] {
            let rep = heisenberg_consistency_report(t, 0.1, &spec).unwrap();
            assert!(
                rep.pass,
                "t = {t}: discrepancy {}",
                rep.max_rel_discrepancy
            );
            assert!(rep.max_rel_discrepancy <= 1e-7);
        }
    }

    #[test]
    fn parameter_invariants() {
        assert!(HeisenbergParams::new(1.5, 1.0, 0.1).is_ok());
        assert!(HeisenbergParams::new(1.5, 0.0, 0.1).is_err());
        assert!(HeisenbergParams::new(1.5, 1.0, -0.1).is_err());
        assert!(MehlerParams::new(0.0, -1.0).is_err());
    }
}
