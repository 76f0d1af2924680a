//! Invariant flows on Sol-manifolds.
//!
//! The suspension of a hyperbolic `A` in SL(2, Z) carries a one-dimensional
//! foliation with slope `alpha`; its transversally blown-up Laplacian
//! reduces, spectrally, to the modified Mathieu operator
//! `-eps^2 d^2/dx^2 + a cosh(2 mu x)` on the line, whose semiclassical Weyl
//! law supplies the counting asymptotics
//! `N_eps(lambda) = lambda^{3/2} eps^{-2} / (4 pi^2)` for `alpha != 0`
//! (`1/(6 pi^2)` for `alpha = 0`). The transverse symbol trace is the
//! beta-deformed integral
//!
//! ```text
//! tr = (1/2) int_R (beta eta / sinh(beta t eta)) e^{-t eta^2} d eta,
//! beta = 2 alpha / (1 + alpha^2),
//! ```
//!
//! whose Weyl prefactor `(2 pi eps)^{-2}` lands strictly *below* the actual
//! heat-trace asymptotics for every nonzero slope: the mismatch ratio sits
//! in (0, 2/3), reaching 2/3 only in the `alpha -> 0` limit. The `alpha = 0`
//! (Riemannian) branch satisfies the prediction exactly, as a coefficient
//! identity.

use crate::error::{Error, Result};
use crate::numerics::{
    integrate_interval, integrate_line, sym_tridiag_count_leq, sym_tridiag_eigs, x_over_sinh,
    Boundary, Discretization1D, QuadratureSpec,
};
use crate::torus::nc_weyl_prediction;

use std::f64::consts::PI;

/// Declared branch for the slope of the invariant flow: the `alpha = 0`
/// branch is semantic, never inferred from a float comparison downstream.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SolSlope {
    Zero,
    NonZero(f64),
}

impl SolSlope {
    pub fn non_zero(alpha: f64) -> Result<Self> {
        if alpha == 0.0 || !alpha.is_finite() {
            return Err(Error::invalid("SolSlope: nonzero branch needs a finite alpha != 0"));
        }
        Ok(SolSlope::NonZero(alpha))
    }

    pub fn value(&self) -> f64 {
        match *self {
            SolSlope::Zero => 0.0,
            SolSlope::NonZero(a) => a,
        }
    }
}

/// Validated gluing matrix data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolMatrixData {
    /// Largest eigenvalue `(|tr| + sqrt(tr^2 - 4)) / 2 > 1`.
    pub lambda_max: f64,
    /// Whether `(e_u, e_v)` (expanding, contracting eigenvectors) is a
    /// positively oriented basis.
    pub orientation_positive: bool,
}

/// Check `det A = 1` and `|tr A| > 2`, returning the expansion rate and the
/// eigenbasis orientation.
pub fn sol_matrix_validate(a: [[i64; 2]; 2]) -> Result<SolMatrixData> {
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    if det != 1 {
        return Err(Error::invalid(format!(
            "sol matrix: determinant must be 1, got {det}"
        )));
    }
    let tr = a[0][0] + a[1][1];
    if tr.abs() <= 2 {
        return Err(Error::invalid(format!(
            "sol matrix: |trace| must exceed 2, got {tr}"
        )));
    }
    let trf = tr as f64;
    let disc = (trf * trf - 4.0).sqrt();
    let lambda_max = (trf.abs() + disc) / 2.0;

    // both eigenvalues, dominant first; |tr| > 2 with det 1 forces the
    // off-diagonal entries to be nonzero, so (a12, mu - a11) spans each
    // eigenspace
    let mu_u = (trf + trf.signum() * disc) / 2.0;
    let mu_v = (trf - trf.signum() * disc) / 2.0;
    let a12 = a[0][1] as f64;
    let orientation = a12 * (mu_v - mu_u);
    Ok(SolMatrixData {
        lambda_max,
        orientation_positive: orientation > 0.0,
    })
}

/// Full Sol geometry bundle: gluing matrix, slope branch, and the Mathieu
/// potential constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolParams {
    pub matrix: [[i64; 2]; 2],
    pub slope: SolSlope,
    pub amplitude: f64,
    pub rate: f64,
    pub matrix_data: SolMatrixData,
}

impl SolParams {
    pub fn new(matrix: [[i64; 2]; 2], slope: SolSlope, amplitude: f64, rate: f64) -> Result<Self> {
        if !(amplitude > 0.0) {
            return Err(Error::invalid("SolParams: amplitude a must be positive"));
        }
        if !(rate > 0.0) {
            return Err(Error::invalid("SolParams: rate mu must be positive"));
        }
        let matrix_data = sol_matrix_validate(matrix)?;
        Ok(SolParams { matrix, slope, amplitude, rate, matrix_data })
    }
}

/// `-eps^2 d^2/dx^2 + a cosh(2 mu x)` on the line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MathieuModel {
    pub a: f64,
    pub mu: f64,
    pub epsilon: f64,
}

impl MathieuModel {
    pub fn new(a: f64, mu: f64, epsilon: f64) -> Result<Self> {
        if !(a > 0.0 && mu > 0.0 && epsilon > 0.0) {
            return Err(Error::invalid("MathieuModel: a, mu, eps must all be positive"));
        }
        Ok(MathieuModel { a, mu, epsilon })
    }

    fn potential(&self, x: f64) -> f64 {
        self.a * (2.0 * self.mu * x).cosh()
    }
}

/// Dirichlet half-width rule: smallest `L` with
/// `a cosh(2 mu L) = 10 lambda_max`, i.e. `L = arccosh(10 lambda_max / a) / (2 mu)`.
/// Eigenfunctions below `lambda_max` decay super-exponentially past the
/// turning point, so this box is certified by the dual-domain run.
pub fn dirichlet_half_width(a: f64, mu: f64, lambda_max: f64) -> Result<f64> {
    if !(a > 0.0 && mu > 0.0) {
        return Err(Error::invalid("dirichlet_half_width: a, mu must be positive"));
    }
    let arg = 10.0 * lambda_max / a;
    if arg <= 1.0 {
        return Err(Error::invalid(format!(
            "dirichlet_half_width: 10 lambda_max / a = {arg} must exceed 1"
        )));
    }
    Ok(arg.acosh() / (2.0 * mu))
}

/// Relative agreement demanded between the base and enlarged-domain runs.
pub const TRUNCATION_CERT_TOL: f64 = 1e-6;

fn require_dirichlet(disc: &Discretization1D) -> Result<()> {
    if disc.boundary() != Boundary::DirichletTruncated {
        return Err(Error::invalid(
            "mathieu model: discretization must be dirichlet-truncated",
        ));
    }
    Ok(())
}

fn check_domain(model: &MathieuModel, disc: &Discretization1D, lambda_max: f64) -> Result<()> {
    let wall = model.potential(disc.half_width());
    // slack of a few ulps so the half-width rule itself always passes
    if wall < 10.0 * lambda_max * (1.0 - 1e-12) {
        return Err(Error::invalid(format!(
            "mathieu domain too small: a cosh(2 mu L) = {wall:.3e} < 10 lambda_max = {:.3e}",
            10.0 * lambda_max
        )));
    }
    Ok(())
}

fn tridiagonal(model: &MathieuModel, half_width: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let h = 2.0 * half_width / (n as f64 + 1.0);
    let kin = model.epsilon * model.epsilon / (h * h);
    let diag: Vec<f64> = (1..=n)
        .map(|i| 2.0 * kin + model.potential(-half_width + i as f64 * h))
        .collect();
    let off = vec![-kin; n - 1];
    (diag, off)
}

/// Enlarged companion grid: same spacing, ~5/4 of the points, so the
/// comparison isolates pure domain truncation (identical spacing means
/// identical discretization error).
fn extended_grid(disc: &Discretization1D) -> (f64, usize) {
    let h = disc.spacing();
    let n_ext = (disc.n_points() + 1) * 5 / 4 + 1;
    let half_ext = h * (n_ext as f64 + 1.0) / 2.0;
    (half_ext, n_ext)
}

/// The `k` smallest eigenvalues of the modified Mathieu operator on the
/// truncated interval, with a dual-domain truncation certificate: the run is
/// repeated on a ~25% larger boxit with the same grid spacing and every
/// requested eigenvalue must agree to [`TRUNCATION_CERT_TOL`] relative.
pub fn mathieu_eigs(
    model: &MathieuModel,
    disc: &Discretization1D,
    k: usize,
    lambda_max: f64,
) -> Result<Vec<f64>> {
    require_dirichlet(disc)?;
    check_domain(model, disc, lambda_max)?;
    let (d, e) = tridiagonal(model, disc.half_width(), disc.n_points());
    let eigs = sym_tridiag_eigs(&d, &e, k)?;

    let (half_ext, n_ext) = extended_grid(disc);
    let (d2, e2) = tridiagonal(model, half_ext, n_ext);
    let eigs_ext = sym_tridiag_eigs(&d2, &e2, k)?;
    for (i, (a, b)) in eigs.iter().zip(&eigs_ext).enumerate() {
        let rel = (a - b).abs() / a.abs().max(b.abs());
        if rel > TRUNCATION_CERT_TOL {
            return Err(Error::TruncationSensitivity {
                index: i,
                relative: rel,
                tolerance: TRUNCATION_CERT_TOL,
            });
        }
    }
    Ok(eigs)
}

/// `#{eigenvalues <= lambda}` of the truncated Mathieu operator, certified
/// by the enlarged-domain run producing the identical count.
pub fn mathieu_count_leq(
    model: &MathieuModel,
    disc: &Discretization1D,
    lambda: f64,
) -> Result<usize> {
    require_dirichlet(disc)?;
    check_domain(model, disc, lambda)?;
    let (d, e) = tridiagonal(model, disc.half_width(), disc.n_points());
    let count = sym_tridiag_count_leq(&d, &e, lambda);
    let (half_ext, n_ext) = extended_grid(disc);
    let (d2, e2) = tridiagonal(model, half_ext, n_ext);
    let count_ext = sym_tridiag_count_leq(&d2, &e2, lambda);
    if count != count_ext {
        return Err(Error::CrossCheck {
            context: "mathieu count: base vs enlarged domain",
            lhs: count as f64,
            rhs: count_ext as f64,
            tolerance: 0.0,
        });
    }
    Ok(count)
}

/// Phase-space area of `{ xi^2 + a cosh(2 mu x) <= lambda }`:
/// `2 int (lambda - a cosh(2 mu x))_+^{1/2} dx`, evaluated after the
/// substitution `x = x0 sin(theta)` which flattens the square-root turning
/// points. Zero for `lambda <= a`.
pub fn mathieu_phase_area(model: &MathieuModel, lambda: f64, spec: &QuadratureSpec) -> Result<f64> {
    if lambda <= model.a {
        return Ok(0.0);
    }
    let x0 = (lambda / model.a).acosh() / (2.0 * model.mu);
    let a = model.a;
    let mu = model.mu;
    integrate_interval(
        |theta| {
            let x = x0 * theta.sin();
            let inside = (lambda - a * (2.0 * mu * x).cosh()).max(0.0);
            2.0 * inside.sqrt() * x0 * theta.cos()
        },
        -PI / 2.0,
        PI / 2.0,
        spec,
    )
}

/// One semiclassical Weyl comparison for the Mathieu operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MathieuWeylReport {
    pub count: usize,
    pub prediction: f64,
    pub ratio: f64,
}

/// Compare `#{eigenvalues <= lambda}` with `area / (2 pi eps)`.
pub fn mathieu_weyl_check(
    model: &MathieuModel,
    lambda: f64,
    disc: &Discretization1D,
) -> Result<MathieuWeylReport> {
    if lambda <= model.a {
        let count = mathieu_count_leq(model, disc, lambda).unwrap_or(0);
        return Ok(MathieuWeylReport { count, prediction: 0.0, ratio: f64::NAN });
    }
    let count = mathieu_count_leq(model, disc, lambda)?;
    let area = mathieu_phase_area(model, lambda, &QuadratureSpec::default())?;
    let prediction = area / (2.0 * PI * model.epsilon);
    Ok(MathieuWeylReport {
        count,
        prediction,
        ratio: count as f64 / prediction,
    })
}

/// Leading-order counting prediction for the Sol Laplacian:
/// `lambda^{3/2} eps^{-2} / (4 pi^2)` off the Riemannian branch,
/// `lambda^{3/2} eps^{-2} / (6 pi^2)` on it.
pub fn sol_counting_prediction(slope: SolSlope, lambda: f64, epsilon: f64) -> f64 {
    if lambda <= 0.0 {
        return 0.0;
    }
    let coeff = match slope {
        SolSlope::NonZero(_) => 1.0 / (4.0 * PI * PI),
        SolSlope::Zero => 1.0 / (6.0 * PI * PI),
    };
    coeff * lambda.powf(1.5) / (epsilon * epsilon)
}

/// Transverse symbol heat trace
/// `(1/2) int_R (beta eta / sinh(beta t eta)) e^{-t eta^2} d eta`,
/// `beta = 2 alpha/(1+alpha^2)`; the `alpha = 0` branch returns its
/// continuous extension `sqrt(pi) / (2 t^{3/2})` in closed form.
pub fn sol_symbol_trace(slope: SolSlope, t: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::invalid("sol_symbol_trace: t must be positive"));
    }
    match slope {
        SolSlope::Zero => Ok(PI.sqrt() / (2.0 * t.powf(1.5))),
        SolSlope::NonZero(alpha) => {
            let beta = 2.0 * alpha / (1.0 + alpha * alpha);
            let v = integrate_line(
                |eta| x_over_sinh(beta * t * eta) / t * (-t * eta * eta).exp(),
                t,
                spec,
            )?;
            Ok(0.5 * v)
        }
    }
}

/// Leading-order heat trace of the Sol Laplacian off the Riemannian branch:
/// `(3 sqrt(pi) / (16 pi^2)) t^{-3/2} eps^{-2}`. The `alpha = 0` branch is a
/// different formula; see [`sol_riemannian_heat_trace_prediction`].
pub fn sol_heat_trace_prediction(slope: SolSlope, t: f64, epsilon: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::invalid("sol_heat_trace_prediction: t must be positive"));
    }
    if !(epsilon > 0.0) {
        return Err(Error::invalid("sol_heat_trace_prediction: epsilon must be positive"));
    }
    match slope {
        SolSlope::Zero => Err(Error::invalid(
            "sol_heat_trace_prediction: alpha = 0 takes the Riemannian branch \
             (sol_riemannian_heat_trace_prediction)",
        )),
        SolSlope::NonZero(_) => {
            Ok(3.0 * PI.sqrt() / (16.0 * PI * PI) / (t.powf(1.5) * epsilon * epsilon))
        }
    }
}

/// Heat-trace asymptotics on the Riemannian branch (`alpha = 0`), the
/// Laplace transform of the `1/(6 pi^2)` counting law:
/// `(sqrt(pi) / (8 pi^2)) t^{-3/2} eps^{-2}`.
pub fn sol_riemannian_heat_trace_prediction(t: f64, epsilon: f64) -> Result<f64> {
    if !(t > 0.0 && epsilon > 0.0) {
        return Err(Error::invalid(
            "sol_riemannian_heat_trace_prediction: t, epsilon must be positive",
        ));
    }
    Ok(PI.sqrt() / (8.0 * PI * PI) / (t.powf(1.5) * epsilon * epsilon))
}

/// Noncommutative Weyl prediction over actual heat-trace asymptotics for a
/// nonzero slope. `eps` cancels; the value lies in `(0, 2/3)`, approaching
/// `2/3` as `alpha -> 0`.
pub fn sol_mismatch_ratio(alpha: f64, t: f64, epsilon: f64, spec: &QuadratureSpec) -> Result<f64> {
    let slope = SolSlope::non_zero(alpha)?;
    let predicted = nc_weyl_prediction(2, epsilon, sol_symbol_trace(slope, t, spec)?);
    let actual = sol_heat_trace_prediction(slope, t, epsilon)?;
    Ok(predicted / actual)
}
