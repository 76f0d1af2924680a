//! Leafwise spectrum distribution functions and their Stieltjes power
//! integrals `int_{-inf}^{lambda} (lambda - tau)^{q/2} dN(tau)`.

use super::special::gamma;
use crate::error::{Error, Result};

/// A nondecreasing, right-continuous counting function vanishing on the
/// negative axis: either a closed-form power law `c * tau^s` on `tau >= 0`,
/// or a finite sorted list of jumps.
#[derive(Debug, Clone, PartialEq)]
pub enum LeafwiseCountingFunction {
    PowerLaw { coefficient: f64, exponent: f64 },
    Jumps(Vec<(f64, f64)>),
}

impl LeafwiseCountingFunction {
    pub fn power_law(coefficient: f64, exponent: f64) -> Result<Self> {
        if !(coefficient > 0.0) {
            return Err(Error::invalid("LeafwiseCountingFunction: coefficient must be positive"));
        }
        if !(exponent > 0.0) {
            return Err(Error::invalid("LeafwiseCountingFunction: exponent must be positive"));
        }
        Ok(LeafwiseCountingFunction::PowerLaw { coefficient, exponent })
    }

    /// Jump list `(position, height)`: positions must be >= 0 and ascending,
    /// heights positive, so that the function is monotone and vanishes on
    /// the negative axis.
    pub fn jumps(jumps: Vec<(f64, f64)>) -> Result<Self> {
        for w in jumps.windows(2) {
            if w[1].0 < w[0].0 {
                return Err(Error::invalid("LeafwiseCountingFunction: jump positions must ascend"));
            }
        }
        for &(pos, height) in &jumps {
            if pos < 0.0 {
                return Err(Error::invalid("LeafwiseCountingFunction: jump positions must be >= 0"));
            }
            if !(height > 0.0) {
                return Err(Error::invalid("LeafwiseCountingFunction: jump heights must be positive"));
            }
        }
        Ok(LeafwiseCountingFunction::Jumps(jumps))
    }

    /// Evaluate `N(tau)`.
    pub fn eval(&self, tau: f64) -> f64 {
        if tau < 0.0 {
            return 0.0;
        }
        match self {
            LeafwiseCountingFunction::PowerLaw { coefficient, exponent } => {
                coefficient * tau.powf(*exponent)
            }
            LeafwiseCountingFunction::Jumps(jumps) => jumps
                .iter()
                .take_while(|&&(pos, _)| pos <= tau)
                .map(|&(_, height)| height)
                .sum(),
        }
    }
}

/// `int_{-inf}^{lambda} (lambda - tau)^{q/2} d N(tau)` for positive integer `q`.
///
/// Power laws use the Beta-function closed form
/// `c * lambda^{q/2+s} * Gamma(s+1) Gamma(q/2+1) / Gamma(s+q/2+1)`;
/// jump lists sum `height * (lambda - pos)^{q/2}` over jumps at or below
/// `lambda`. Zero for `lambda` below the support.
pub fn stieltjes_power_integral(nf: &LeafwiseCountingFunction, q: u32, lambda: f64) -> f64 {
    debug_assert!(q >= 1);
    let half_q = q as f64 / 2.0;
    if lambda < 0.0 {
        return 0.0;
    }
    match nf {
        LeafwiseCountingFunction::PowerLaw { coefficient, exponent } => {
            if lambda == 0.0 {
                return 0.0;
            }
            let s = *exponent;
            coefficient * lambda.powf(half_q + s) * gamma(s + 1.0) * gamma(half_q + 1.0)
                / gamma(s + half_q + 1.0)
        }
        LeafwiseCountingFunction::Jumps(jumps) => jumps
            .iter()
            .take_while(|&&(pos, _)| pos <= lambda)
            .map(|&(pos, height)| height * (lambda - pos).powf(half_q))
            .sum(),
    }
}
