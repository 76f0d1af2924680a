//! Quadrature tolerances and 1D grid descriptions shared across modules.

use crate::error::{Error, Result};

/// Tolerances and truncation policy for integrals over the line or plane
/// with Gaussian-decay envelopes `exp(-t x^2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureSpec {
    /// Relative tolerance on the converged value (> 0).
    pub rel_tol: f64,
    /// Absolute tolerance (> 0); also controls the truncation radius.
    pub abs_tol: f64,
    /// Maximum number of panel doublings (>= 1).
    pub max_refinements: u32,
    /// Rule mapping the decay rate `t` to the truncation radius.
    pub truncation: TruncationPolicy,
}

/// How integrals over the real line are truncated.
#[derive(Debug, Clone, PartialEq)]
pub enum TruncationPolicy {
    /// Smallest `R` with `exp(-t R^2) < abs_tol / 10`, floored at
    /// `min_radius_factor / sqrt(t)`. The Gaussian tail bound then puts the
    /// discarded mass provably below tolerance.
    GaussianTail { min_radius_factor: f64 },
    /// Fixed radius, decay rate ignored.
    Fixed(f64),
}

impl QuadratureSpec {
    pub fn new(rel_tol: f64, abs_tol: f64, max_refinements: u32) -> Result<Self> {
        if !(rel_tol > 0.0) {
            return Err(Error::invalid("QuadratureSpec: rel_tol must be positive"));
        }
        if !(abs_tol > 0.0) {
            return Err(Error::invalid("QuadratureSpec: abs_tol must be positive"));
        }
        if max_refinements < 1 {
            return Err(Error::invalid("QuadratureSpec: max_refinements must be >= 1"));
        }
        Ok(QuadratureSpec {
            rel_tol,
            abs_tol,
            max_refinements,
            truncation: TruncationPolicy::GaussianTail { min_radius_factor: 8.0 },
        })
    }

    /// Truncation radius for Gaussian decay rate `t`.
    pub fn truncation_radius(&self, t: f64) -> f64 {
        match self.truncation {
            TruncationPolicy::Fixed(r) => r,
            TruncationPolicy::GaussianTail { min_radius_factor } => {
                let needed = ((10.0 / self.abs_tol).ln() / t).sqrt();
                needed.max(min_radius_factor / t.sqrt())
            }
        }
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec::new(1e-10, 1e-12, 24).expect("default tolerances are valid")
    }
}

/// Truncated-interval or periodic grid for 1D Schrodinger eigensolves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Discretization1D {
    half_width: f64,
    n_points: usize,
    boundary: Boundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    /// Dirichlet ends on `[-L, L]`; interior points `x_i = -L + i h`,
    /// `h = 2L/(n+1)`, `i = 1..=n`.
    DirichletTruncated,
    /// Periodic grid on the unit circle; `x_i = i/n`, `h = 1/n`.
    PeriodicUnitCircle,
}

impl Discretization1D {
    pub fn dirichlet(half_width: f64, n_points: usize) -> Result<Self> {
        if !(half_width > 0.0) {
            return Err(Error::invalid("Discretization1D: half_width must be positive"));
        }
        if n_points < 3 {
            return Err(Error::invalid("Discretization1D: n_points must be >= 3"));
        }
        Ok(Discretization1D {
            half_width,
            n_points,
            boundary: Boundary::DirichletTruncated,
        })
    }

    pub fn periodic(n_points: usize) -> Result<Self> {
        if n_points < 3 {
            return Err(Error::invalid("Discretization1D: n_points must be >= 3"));
        }
        Ok(Discretization1D {
            half_width: 0.0,
            n_points,
            boundary: Boundary::PeriodicUnitCircle,
        })
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    /// Grid spacing: `2L/(n+1)` for Dirichlet, `1/n` on the circle.
    pub fn spacing(&self) -> f64 {
        match self.boundary {
            Boundary::DirichletTruncated => 2.0 * self.half_width / (self.n_points as f64 + 1.0),
            Boundary::PeriodicUnitCircle => 1.0 / self.n_points as f64,
        }
    }
}
