//! Shared numerical kernels: quadrature with Gaussian-envelope truncation,
//! symmetric eigensolvers, Stieltjes power integrals, and power-law fits.
//!
//! Everything here is a pure function of its inputs and deterministic for a
//! fixed input (fixed panel orders, pairwise summation), so concurrent use
//! from multiple threads is safe.

pub mod eigen;
pub mod fit;
pub mod quadrature;
pub mod spec;
pub mod special;
pub mod stieltjes;

pub use eigen::{
    dense_sym_count_leq, dense_sym_eigs, sym_tridiag_count_leq, sym_tridiag_eigs, SymmetricMatrix,
    DENSE_DIM_LIMIT,
};
pub use fit::{fit_power_law, AsymptoticFit};
pub use quadrature::{integrate_interval, integrate_line, integrate_plane};
pub use spec::{Boundary, Discretization1D, QuadratureSpec, TruncationPolicy};
pub use special::{gamma, gaussian_series_tail, pairwise_sum, tanhc, x_over_sinh};
pub use stieltjes::{stieltjes_power_integral, LeafwiseCountingFunction};
