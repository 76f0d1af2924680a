//! adialab — a numerical laboratory for adiabatic spectral asymptotics on
//! foliated manifolds.
//!
//! The library computes, at desk scale, the spectral quantities attached to
//! blowing up a Riemannian metric transversally to a one-dimensional
//! foliation (`g_eps = g_F + eps^{-2} g_H`): exact spectra and eigenvalue
//! counting functions, heat traces, closed-form transverse symbol traces,
//! and the leading-order eps-asymptotics. Three concrete geometries are
//! covered — linear foliations on the 2-torus, invariant flows on the
//! Heisenberg manifold, and invariant flows on Sol-manifolds — next to
//! semiclassical reference models on circles. Together they confirm the
//! noncommutative Weyl prediction
//! `tr f(Delta_eps) ~ (2 pi eps)^{-q} tr_F f(sigma)` where it holds and
//! quantify its failure where it does not.

// `!(x > 0.0)` is used instead of `x <= 0.0` throughout: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod golden;
pub mod heisenberg;
pub mod numerics;
pub mod semiclassical;
pub mod sol;
pub mod torus;

pub use error::{Error, Result};
pub use heisenberg::{
    heisenberg_consistency_report, heisenberg_diagonal_kernel, heisenberg_heat_trace_prediction,
    heisenberg_symbol_trace_2d, heisenberg_symbol_trace_reduced, mehler_kernel,
    oscillator_heat_trace, ConsistencyReport, HeisenbergParams, MehlerParams,
};
pub use numerics::{
    dense_sym_count_leq, dense_sym_eigs, fit_power_law, integrate_interval, integrate_line,
    integrate_plane, stieltjes_power_integral, sym_tridiag_count_leq, sym_tridiag_eigs,
    AsymptoticFit, Boundary, Discretization1D, LeafwiseCountingFunction, QuadratureSpec,
    SymmetricMatrix,
};
pub use semiclassical::{
    adiabatic_counting_from_leafwise, circle_count_leq, circle_heat_trace,
    circle_schrodinger_eigs, operator_symbol_trace, product_lhs_trace, weyl_check_1d,
    weyl_phase_area_1d, CircleSchrodinger, ProductSchrodinger, WeylCheckRow,
};
pub use sol::{
    dirichlet_half_width, mathieu_count_leq, mathieu_eigs, mathieu_phase_area, mathieu_weyl_check,
    sol_counting_prediction, sol_heat_trace_prediction, sol_matrix_validate, sol_mismatch_ratio,
    sol_riemannian_heat_trace_prediction, sol_symbol_trace, MathieuModel, MathieuWeylReport,
    SolMatrixData, SolParams, SolSlope,
};
pub use torus::{
    nc_weyl_prediction, torus_counting, torus_counting_prediction, torus_counting_with_budget,
    torus_eigenvalue, torus_eigenvalues_leq, torus_heat_trace, torus_symbol_heat_trace,
    SymbolTraceCheck, TorusParams,
};
