use thiserror::Error;

/// Error type shared by every numerical kernel and geometry module.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Adaptive quadrature exhausted its refinement budget. Carries the last
    /// two composite estimates so the caller can judge how far apart they are.
    #[error(
        "quadrature did not converge{} after {refinements} refinements \
         (last estimates {previous:.17e}, {latest:.17e})",
        axis.map(|a| format!(" on the {a} axis")).unwrap_or_default()
    )]
    QuadratureConvergence {
        /// `inner` / `outer` when raised from an iterated plane integral.
        axis: Option<&'static str>,
        refinements: u32,
        previous: f64,
        latest: f64,
    },

    /// A precondition on an argument was violated.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A series or lattice tail bound could not be pushed below the
    /// requested tolerance within the available budget.
    #[error("tail bound {achieved:.3e} exceeds requested tolerance {requested:.3e}")]
    TailBound { requested: f64, achieved: f64 },

    /// Predicted enumeration work exceeds the configured budget.
    #[error("lattice enumeration would visit ~{predicted:.3e} points, over the budget of {budget}")]
    BudgetExceeded { predicted: f64, budget: u64 },

    /// The dual-domain truncation certificate failed: eigenvalue `index`
    /// moved by `relative` when the Dirichlet box was enlarged.
    #[error(
        "domain-truncation certificate failed: eigenvalue {index} shifted by \
         {relative:.3e} (> {tolerance:.3e}) when the box was enlarged"
    )]
    TruncationSensitivity {
        index: usize,
        relative: f64,
        tolerance: f64,
    },

    /// Two supposedly-equal computational routes disagreed.
    #[error("cross-check failed ({context}): {lhs:.17e} vs {rhs:.17e}, tolerance {tolerance:.3e}")]
    CrossCheck {
        context: &'static str,
        lhs: f64,
        rhs: f64,
        tolerance: f64,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    /// Attach an axis label to a quadrature-convergence error.
    pub(crate) fn tag_axis(mut self, tag: &'static str) -> Self {
        if let Error::QuadratureConvergence { ref mut axis, .. } = self {
            *axis = Some(tag);
        }
        self
    }
}

pub type Result<T> = std::result::Result<T, Error>;
