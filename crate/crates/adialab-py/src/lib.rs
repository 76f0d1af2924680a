//! Python bindings for the adialab spectral laboratory.
//!
//! The module mirrors the main library operations with a flat functional
//! surface: torus lattice counts and heat traces, the Mehler/Heisenberg
//! kernels and trace integrals, the Sol/Mathieu machinery, the circle
//! reference models, and the generic numerics (power-law fits, line
//! integrals, the leafwise-to-adiabatic counting transform).

use std::cell::RefCell;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use adialab::numerics::pairwise_sum;
use adialab::{
    sol, torus, Discretization1D, Error, LeafwiseCountingFunction, MathieuModel, MehlerParams,
    QuadratureSpec, SolSlope, TorusParams,
};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn torus_params(alpha: f64, epsilon: f64, rational: Option<(i64, u64)>) -> PyResult<TorusParams> {
    match rational {
        Some((p, q)) => TorusParams::new_rational(p, q, epsilon).map_err(err),
        None => TorusParams::new(alpha, epsilon).map_err(err),
    }
}

/// Wrap a Python callable as `Fn(f64) -> f64`, capturing the first raised
/// exception instead of aborting the integration mid-flight.
struct PyIntegrand<'py> {
    f: &'py Bound<'py, PyAny>,
    failure: RefCell<Option<PyErr>>,
}

impl<'py> PyIntegrand<'py> {
    fn new(f: &'py Bound<'py, PyAny>) -> Self {
        PyIntegrand { f, failure: RefCell::new(None) }
    }

    fn call(&self, x: f64) -> f64 {
        if self.failure.borrow().is_some() {
            return 0.0;
        }
        match self.f.call1((x,)).and_then(|v| v.extract::<f64>()) {
            Ok(v) => v,
            Err(e) => {
                *self.failure.borrow_mut() = Some(e);
                0.0
            }
        }
    }

    fn finish(self, value: Result<f64, Error>) -> PyResult<f64> {
        if let Some(e) = self.failure.into_inner() {
            return Err(e);
        }
        value.map_err(err)
    }
}

// ---- torus ----------------------------------------------------------------

/// Exact torus eigenvalue lambda_{k,l}(eps) for slope alpha.
#[pyfunction]
#[pyo3(signature = (k, l, alpha, epsilon, rational=None))]
fn torus_eigenvalue(k: i64, l: i64, alpha: f64, epsilon: f64, rational: Option<(i64, u64)>) -> PyResult<f64> {
    Ok(torus::torus_eigenvalue(&torus_params(alpha, epsilon, rational)?, k, l))
}

/// Exact number of torus eigenvalues <= lambda.
#[pyfunction]
#[pyo3(signature = (alpha, epsilon, lam, rational=None))]
fn torus_counting(alpha: f64, epsilon: f64, lam: f64, rational: Option<(i64, u64)>) -> PyResult<u64> {
    torus::torus_counting(&torus_params(alpha, epsilon, rational)?, lam).map_err(err)
}

/// Leading-order counting prediction (irrational or declared-rational branch).
#[pyfunction]
#[pyo3(signature = (alpha, epsilon, lam, rational=None))]
fn torus_counting_prediction(
    alpha: f64,
    epsilon: f64,
    lam: f64,
    rational: Option<(i64, u64)>,
) -> PyResult<f64> {
    Ok(torus::torus_counting_prediction(&torus_params(alpha, epsilon, rational)?, lam))
}

/// Torus heat trace with a rigorous tail bound below tail_tol.
#[pyfunction]
#[pyo3(signature = (alpha, epsilon, t, tail_tol=1e-10, rational=None))]
fn torus_heat_trace(
    alpha: f64,
    epsilon: f64,
    t: f64,
    tail_tol: f64,
    rational: Option<(i64, u64)>,
) -> PyResult<f64> {
    torus::torus_heat_trace(&torus_params(alpha, epsilon, rational)?, t, tail_tol).map_err(err)
}

/// Transverse symbol heat trace of the torus foliation:
/// (closed_form, quadrature), both 1/(2t) to 1e-10.
#[pyfunction]
fn torus_symbol_heat_trace(t: f64) -> PyResult<(f64, f64)> {
    let check = torus::torus_symbol_heat_trace(t, &QuadratureSpec::default()).map_err(err)?;
    Ok((check.closed_form, check.quadrature))
}

/// (2 pi eps)^{-q} * symbol_trace.
#[pyfunction]
fn nc_weyl_prediction(q_codim: u32, epsilon: f64, symbol_trace: f64) -> f64 {
    torus::nc_weyl_prediction(q_codim, epsilon, symbol_trace)
}

// ---- heisenberg -----------------------------------------------------------

/// Mehler heat kernel of -d^2/dx^2 + omega^2 x^2 at time t.
#[pyfunction]
fn mehler_kernel(omega: f64, t: f64, x: f64, y: f64) -> PyResult<f64> {
    let p = MehlerParams::new(omega, t).map_err(err)?;
    Ok(adialab::mehler_kernel(&p, x, y))
}

/// Oscillator heat trace sum_{n} exp(-(2n+1)|omega| t) = 1/(2 sinh |omega| t).
#[pyfunction]
#[pyo3(signature = (omega, t, n_max=1_000_000))]
fn oscillator_heat_trace(omega: f64, t: f64, n_max: u32) -> PyResult<f64> {
    let p = MehlerParams::new(omega, t).map_err(err)?;
    adialab::oscillator_heat_trace(&p, n_max).map_err(err)
}

/// Diagonal of the leafwise symbol heat kernel on the conormal fiber.
#[pyfunction]
fn heisenberg_diagonal_kernel(t: f64, p2: f64, p3: f64) -> f64 {
    adialab::heisenberg_diagonal_kernel(t, p2, p3)
}

/// Transverse symbol trace as a 2D fiber integral.
#[pyfunction]
fn heisenberg_symbol_trace_2d(t: f64) -> PyResult<f64> {
    adialab::heisenberg_symbol_trace_2d(t, &QuadratureSpec::default()).map_err(err)
}

/// Transverse symbol trace reduced to one dimension.
#[pyfunction]
fn heisenberg_symbol_trace_reduced(t: f64) -> PyResult<f64> {
    adialab::heisenberg_symbol_trace_reduced(t, &QuadratureSpec::default()).map_err(err)
}

/// Leading-order heat trace of the Heisenberg Laplacian in the adiabatic limit.
#[pyfunction]
fn heisenberg_heat_trace_prediction(t: f64, epsilon: f64) -> PyResult<f64> {
    adialab::heisenberg_heat_trace_prediction(t, epsilon, &QuadratureSpec::default()).map_err(err)
}

/// Three-route consistency report as a dict.
#[pyfunction]
fn heisenberg_consistency(py: Python<'_>, t: f64, epsilon: f64) -> PyResult<Py<PyDict>> {
    let rep = adialab::heisenberg_consistency_report(t, epsilon, &QuadratureSpec::default())
        .map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("t", rep.t)?;
    d.set_item("epsilon", rep.epsilon)?;
    d.set_item("trace_2d", rep.trace_2d)?;
    d.set_item("trace_reduced", rep.trace_reduced)?;
    d.set_item("prediction_rescaled", rep.prediction_rescaled)?;
    d.set_item("max_rel_discrepancy", rep.max_rel_discrepancy)?;
    d.set_item("pass", rep.pass)?;
    Ok(d.into())
}

// ---- sol ------------------------------------------------------------------

fn slope(alpha: f64) -> PyResult<SolSlope> {
    if alpha == 0.0 {
        Ok(SolSlope::Zero)
    } else {
        SolSlope::non_zero(alpha).map_err(err)
    }
}

/// Validate a gluing matrix [[a11,a12],[a21,a22]]:
/// returns (lambda_max, orientation_positive).
#[pyfunction]
fn sol_matrix_validate(matrix: [[i64; 2]; 2]) -> PyResult<(f64, bool)> {
    let data = sol::sol_matrix_validate(matrix).map_err(err)?;
    Ok((data.lambda_max, data.orientation_positive))
}

fn mathieu_setup(a: f64, mu: f64, epsilon: f64, lambda_max: f64, n_points: usize)
    -> PyResult<(MathieuModel, Discretization1D)>
{
    let model = MathieuModel::new(a, mu, epsilon).map_err(err)?;
    let half = sol::dirichlet_half_width(a, mu, lambda_max).map_err(err)?;
    let disc = Discretization1D::dirichlet(half, n_points).map_err(err)?;
    Ok((model, disc))
}

/// k smallest eigenvalues of -eps^2 d^2/dx^2 + a cosh(2 mu x), with the
/// dual-domain truncation certificate.
#[pyfunction]
#[pyo3(signature = (a, mu, epsilon, k, lambda_max, n_points=3000))]
fn mathieu_eigs(
    a: f64,
    mu: f64,
    epsilon: f64,
    k: usize,
    lambda_max: f64,
    n_points: usize,
) -> PyResult<Vec<f64>> {
    let (model, disc) = mathieu_setup(a, mu, epsilon, lambda_max, n_points)?;
    sol::mathieu_eigs(&model, &disc, k, lambda_max).map_err(err)
}

/// Phase-space area of the Mathieu sublevel set at lambda.
#[pyfunction]
fn mathieu_phase_area(a: f64, mu: f64, lam: f64) -> PyResult<f64> {
    let model = MathieuModel::new(a, mu, 1.0).map_err(err)?;
    sol::mathieu_phase_area(&model, lam, &QuadratureSpec::default()).map_err(err)
}

/// Semiclassical Weyl comparison for the Mathieu operator, as a dict.
#[pyfunction]
#[pyo3(signature = (a, mu, epsilon, lam, n_points=3200))]
fn mathieu_weyl_check(
    py: Python<'_>,
    a: f64,
    mu: f64,
    epsilon: f64,
    lam: f64,
    n_points: usize,
) -> PyResult<Py<PyDict>> {
    let (model, disc) = mathieu_setup(a, mu, epsilon, lam, n_points)?;
    let rep = sol::mathieu_weyl_check(&model, lam, &disc).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("count", rep.count)?;
    d.set_item("prediction", rep.prediction)?;
    d.set_item("ratio", rep.ratio)?;
    Ok(d.into())
}

/// Leading-order Sol counting prediction; the alpha = 0 branch is chosen by
/// passing exactly 0.
#[pyfunction]
fn sol_counting_prediction(alpha: f64, lam: f64, epsilon: f64) -> PyResult<f64> {
    Ok(sol::sol_counting_prediction(slope(alpha)?, lam, epsilon))
}

/// Beta-deformed transverse symbol trace.
#[pyfunction]
fn sol_symbol_trace(alpha: f64, t: f64) -> PyResult<f64> {
    sol::sol_symbol_trace(slope(alpha)?, t, &QuadratureSpec::default()).map_err(err)
}

/// Heat-trace asymptotics of the Sol Laplacian, alpha != 0 branch.
#[pyfunction]
fn sol_heat_trace_prediction(alpha: f64, t: f64, epsilon: f64) -> PyResult<f64> {
    sol::sol_heat_trace_prediction(slope(alpha)?, t, epsilon).map_err(err)
}

/// Heat-trace asymptotics on the Riemannian (alpha = 0) branch.
#[pyfunction]
fn sol_riemannian_heat_trace_prediction(t: f64, epsilon: f64) -> PyResult<f64> {
    sol::sol_riemannian_heat_trace_prediction(t, epsilon).map_err(err)
}

/// Weyl-prefactor prediction over the true asymptotics; lies in (0, 2/3).
#[pyfunction]
fn sol_mismatch_ratio(alpha: f64, t: f64, epsilon: f64) -> PyResult<f64> {
    sol::sol_mismatch_ratio(alpha, t, epsilon, &QuadratureSpec::default()).map_err(err)
}

// ---- semiclassical reference ----------------------------------------------

/// Build the sampled-potential closure: `samples[i]` is V at x = i/n.
fn sampled(samples: &[f64]) -> impl Fn(f64) -> f64 + '_ {
    let n = samples.len() as f64;
    move |x: f64| samples[((x * n).round() as usize) % samples.len()]
}

/// k smallest eigenvalues of -h^2 u'' + V on the unit circle; `potential`
/// holds the n grid samples V(i/n).
#[pyfunction]
fn circle_schrodinger_eigs(potential: Vec<f64>, h: f64, k: usize) -> PyResult<Vec<f64>> {
    let disc = Discretization1D::periodic(potential.len()).map_err(err)?;
    let model = adialab::CircleSchrodinger::new(sampled(&potential), h).map_err(err)?;
    adialab::circle_schrodinger_eigs(&model, &disc, k).map_err(err)
}

/// #{eigenvalues <= lambda} of the discretized circle operator.
#[pyfunction]
fn circle_count_leq(potential: Vec<f64>, h: f64, lam: f64) -> PyResult<usize> {
    let disc = Discretization1D::periodic(potential.len()).map_err(err)?;
    let model = adialab::CircleSchrodinger::new(sampled(&potential), h).map_err(err)?;
    adialab::circle_count_leq(&model, &disc, lam).map_err(err)
}

/// Phase-space area int_0^1 2 sqrt(max(0, lambda - V(x))) dx for a Python
/// callable potential.
#[pyfunction]
fn weyl_phase_area_1d(potential: &Bound<'_, PyAny>, lam: f64) -> PyResult<f64> {
    let integrand = PyIntegrand::new(potential);
    let model = adialab::CircleSchrodinger::new(|x| integrand.call(x), 1.0).map_err(err)?;
    let value = adialab::weyl_phase_area_1d(&model, lam, &QuadratureSpec::default());
    integrand.finish(value)
}

/// Exact heat trace of the flat product model Delta_X + eps^2 Delta_Y.
#[pyfunction]
#[pyo3(signature = (epsilon, t, n_x=384, n_y=1500, tail_tol=1e-12))]
fn product_lhs_trace(epsilon: f64, t: f64, n_x: usize, n_y: usize, tail_tol: f64) -> PyResult<f64> {
    let model = adialab::ProductSchrodinger::new(|_: f64| 0.0, |_: f64| 0.0, epsilon).map_err(err)?;
    let disc_x = Discretization1D::periodic(n_x).map_err(err)?;
    let disc_y = Discretization1D::periodic(n_y).map_err(err)?;
    adialab::product_lhs_trace(&model, t, tail_tol, &disc_x, &disc_y).map_err(err)
}

/// Operator-valued symbol trace of the flat product model (eps-independent).
#[pyfunction]
#[pyo3(signature = (t, n_x=384))]
fn operator_symbol_trace(t: f64, n_x: usize) -> PyResult<f64> {
    let model = adialab::ProductSchrodinger::new(|_: f64| 0.0, |_: f64| 0.0, 1.0).map_err(err)?;
    let disc_x = Discretization1D::periodic(n_x).map_err(err)?;
    adialab::operator_symbol_trace(&model, t, &QuadratureSpec::default(), &disc_x).map_err(err)
}

/// Adiabatic counting prediction from a power-law leafwise counting
/// function N(tau) = c tau^s.
#[pyfunction]
fn adiabatic_counting_power_law(c: f64, s: f64, q_codim: u32, lam: f64) -> PyResult<f64> {
    let nf = LeafwiseCountingFunction::power_law(c, s).map_err(err)?;
    Ok(adialab::adiabatic_counting_from_leafwise(&nf, q_codim, lam))
}

/// Adiabatic counting prediction from a jump-list leafwise counting
/// function [(position, height), ...].
#[pyfunction]
fn adiabatic_counting_jumps(jumps: Vec<(f64, f64)>, q_codim: u32, lam: f64) -> PyResult<f64> {
    let nf = LeafwiseCountingFunction::jumps(jumps).map_err(err)?;
    Ok(adialab::adiabatic_counting_from_leafwise(&nf, q_codim, lam))
}

// ---- numerics --------------------------------------------------------------

/// Log-log least squares y ~ c * eps^{-gamma} over [(eps, y), ...]; returns a
/// dict with coefficient, exponent, residual, n_points.
#[pyfunction]
fn fit_power_law(py: Python<'_>, samples: Vec<(f64, f64)>) -> PyResult<Py<PyDict>> {
    let fit = adialab::fit_power_law(&samples).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("coefficient", fit.coefficient)?;
    d.set_item("exponent", fit.exponent)?;
    d.set_item("residual", fit.residual)?;
    d.set_item("n_points", fit.n_points)?;
    Ok(d.into())
}

/// Integrate a Python callable over the real line, assuming a Gaussian
/// envelope exp(-decay_rate x^2).
#[pyfunction]
fn integrate_line(f: &Bound<'_, PyAny>, decay_rate: f64) -> PyResult<f64> {
    let integrand = PyIntegrand::new(f);
    let value = adialab::integrate_line(|x| integrand.call(x), decay_rate, &QuadratureSpec::default());
    integrand.finish(value)
}

/// Deterministic pairwise sum of a list of floats.
#[pyfunction]
fn pairwise_sum_py(values: Vec<f64>) -> f64 {
    pairwise_sum(&values)
}

#[pymodule]
fn adialab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(torus_eigenvalue, m)?)?;
    m.add_function(wrap_pyfunction!(torus_counting, m)?)?;
    m.add_function(wrap_pyfunction!(torus_counting_prediction, m)?)?;
    m.add_function(wrap_pyfunction!(torus_heat_trace, m)?)?;
    m.add_function(wrap_pyfunction!(torus_symbol_heat_trace, m)?)?;
    m.add_function(wrap_pyfunction!(nc_weyl_prediction, m)?)?;
    m.add_function(wrap_pyfunction!(mehler_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(oscillator_heat_trace, m)?)?;
    m.add_function(wrap_pyfunction!(heisenberg_diagonal_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(heisenberg_symbol_trace_2d, m)?)?;
    m.add_function(wrap_pyfunction!(heisenberg_symbol_trace_reduced, m)?)?;
    m.add_function(wrap_pyfunction!(heisenberg_heat_trace_prediction, m)?)?;
    m.add_function(wrap_pyfunction!(heisenberg_consistency, m)?)?;
    m.add_function(wrap_pyfunction!(sol_matrix_validate, m)?)?;
    m.add_function(wrap_pyfunction!(mathieu_eigs, m)?)?;
    m.add_function(wrap_pyfunction!(mathieu_phase_area, m)?)?;
    m.add_function(wrap_pyfunction!(mathieu_weyl_check, m)?)?;
    m.add_function(wrap_pyfunction!(sol_counting_prediction, m)?)?;
    m.add_function(wrap_pyfunction!(sol_symbol_trace, m)?)?;
    m.add_function(wrap_pyfunction!(sol_heat_trace_prediction, m)?)?;
    m.add_function(wrap_pyfunction!(sol_riemannian_heat_trace_prediction, m)?)?;
    m.add_function(wrap_pyfunction!(sol_mismatch_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(circle_schrodinger_eigs, m)?)?;
    m.add_function(wrap_pyfunction!(circle_count_leq, m)?)?;
    m.add_function(wrap_pyfunction!(weyl_phase_area_1d, m)?)?;
    m.add_function(wrap_pyfunction!(product_lhs_trace, m)?)?;
    m.add_function(wrap_pyfunction!(operator_symbol_trace, m)?)?;
    m.add_function(wrap_pyfunction!(adiabatic_counting_power_law, m)?)?;
    m.add_function(wrap_pyfunction!(adiabatic_counting_jumps, m)?)?;
    m.add_function(wrap_pyfunction!(fit_power_law, m)?)?;
    m.add_function(wrap_pyfunction!(integrate_line, m)?)?;
    m.add_function(wrap_pyfunction!(pairwise_sum_py, m)?)?;
    Ok(())
}
