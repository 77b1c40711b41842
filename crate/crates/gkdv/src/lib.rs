//! Lie-symmetry toolkit for variable-coefficient generalized KdV equations
//! u_t + u^n u_x + h(t) u + g(t) u_xxx = 0.
//!
//! The crate classifies class members by their Lie symmetries, reduces
//! initial-and-boundary-value problems to third-order ODE initial value
//! problems through similarity ansatzes, solves those with an explicit
//! finite-difference scheme (plus an independent Runge-Kutta reference
//! integrator), and maps solved profiles back to verified u(x, t) fields.

pub mod classify;
pub mod error;
pub mod exact;
pub mod fdsolver;
pub mod model;
pub mod oracle;
pub mod reconstruct;
pub mod reduce;
pub mod textio;

mod num;

#[doc(hidden)]
pub mod testutil;

pub use classify::{
    check_bc_invariance, classify, generators_for_damped_power_law, ClassificationReport,
    Generator, SubalgebraId, SymmetryClass,
};
pub use error::{Error, Result};
pub use exact::{constant_profile, TravelingWaveSolution, WaveKind};
pub use fdsolver::{
    convergence_study, discrete_residual, loglog_slope, nonlinear_term, solve, sweep, update_point,
    Grid, SolutionProfile, SolveOutcome, SolverConfig,
};
pub use model::{
    apply_scaling_equivalence, gauge_to_zero_damping, normalize_g, CoefficientFunction,
    EquivParams, GKdVEquation, GaugeResult, TimeMap, UScale,
};
pub use oracle::{compare_profiles, rk_solve, OracleConfig, ProfileComparison};
pub use reconstruct::{interpolate, pde_residual, reconstruct, ResidualNorms, SpaceTimeField};
pub use reduce::{
    build_ansatz, damped_power_law_ansatz, damped_power_law_ode, helal_benchmark, reduce_ibvp,
    Ansatz, GenericOde, ReducedIvp, ReductionCase, ReductionParams,
};
