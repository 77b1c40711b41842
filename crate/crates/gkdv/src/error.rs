//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong across the toolkit.
///
/// The variants mirror the failure modes of the individual subsystems;
/// they are collected in one enum so that pipelines (classify -> reduce ->
/// solve -> reconstruct) compose without conversion boilerplate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// `t` lies outside the natural domain of a coefficient form.
    #[error("t = {t} is outside the domain of the coefficient form: {reason}")]
    CoefficientDomain { t: f64, reason: &'static str },

    /// A coefficient form violates its structural invariants.
    #[error("invalid equation: {0}")]
    InvalidEquation(&'static str),

    /// Equivalence parameters must have eps1 != 0 and eps3 != 0.
    #[error("invalid equivalence parameters: {0}")]
    BadEquivParams(&'static str),

    /// The damping h(t) is outside the family the gauge map supports.
    #[error(
        "damping form not supported by the gauge transformation (supported: zero, constant, j/t)"
    )]
    UnsupportedDampingForm,

    /// n*j = 1 makes the power-law time map degenerate.
    #[error("n*j = 1 (n = {n}, j = {j}): the time map t^(1-nj)/(1-nj) degenerates")]
    NjEqualsOne { n: f64, j: f64 },

    /// The gauged dispersion coefficient leaves the closed family.
    #[error("gauged g leaves the closed coefficient family: {0}")]
    UnrepresentableGauge(&'static str),

    /// t-tilde is outside the range of a time map.
    #[error("t-tilde = {t_tilde} is outside the range of the time map")]
    TimeMapRange { t_tilde: f64 },

    /// g cannot be brought to a Table-1 normal form without reversing time.
    #[error("g is not normalizable by the orientation-preserving equivalence subgroup: {0}")]
    NotNormalizable(&'static str),

    /// The generator is not a boundary-compatible dilatation.
    #[error("generator is not a dilatation (needs tau_t != 0, tau_1 = 0, xi_1 = 0)")]
    NotDilatation,

    /// No similarity ansatz is implemented for this generator shape.
    #[error("generator shape admits none of the implemented similarity ansatzes")]
    UnsupportedGenerator,

    /// Reduction case id outside 1..=5.
    #[error("unknown reduction case {id} (valid rows: 1..=5)")]
    UnknownCase { id: u32 },

    /// Boundary data exponent incompatible with the symmetry.
    #[error("boundary exponent {found} is incompatible with the invariant exponent {required}")]
    IncompatibleBoundaryExponent { required: f64, found: f64 },

    /// The equation does not match a reducible (h, g) pattern.
    #[error("equation is outside the reducible class: {0}")]
    UnsupportedClass(&'static str),

    /// IBVP reductions need the omega interval to start at 0.
    #[error("IBVP reduction requires domain [0, b] (got [{a}, {b}])")]
    BadDomain { a: f64, b: f64 },

    /// The boundary amplitude gamma must be nonzero.
    #[error("gamma = 0: the boundary datum q(t) must be nonvanishing")]
    ZeroGamma,

    /// Invalid parameters for a benchmark problem.
    #[error("invalid parameters: {0}")]
    BadParameters(&'static str),

    /// Invalid finite-difference grid.
    #[error("invalid grid [{a}, {b}] with {n} cells: {reason}")]
    BadGrid {
        a: f64,
        b: f64,
        n: usize,
        reason: &'static str,
    },

    /// A real power of a negative base with non-integer exponent.
    #[error("negative base {base} cannot be raised to non-integer power {exponent}")]
    NegativeBase { base: f64, exponent: f64 },

    /// Convergence-study grids must nest into the reference grid.
    #[error("grid N = {n} does not divide the reference N = {n_ref}")]
    NonNestedGrids { n: usize, n_ref: usize },

    /// A solve inside a convergence study did not converge.
    #[error("solve at N = {n} did not converge: {status}")]
    StudySolveFailed { n: usize, status: String },

    /// The reference integrator exceeded the blow-up guard.
    #[error("integration blew up near omega = {omega} (|state| = {magnitude:.3e})")]
    BlowUp { omega: f64, magnitude: f64 },

    /// The adaptive step size underflowed.
    #[error("step size underflow near omega = {omega}")]
    StepSizeUnderflow { omega: f64 },

    /// The reference integrator ran out of steps.
    #[error("maximum number of integration steps exceeded near omega = {omega}")]
    MaxStepsExceeded { omega: f64 },

    /// Two profiles live on different grids.
    #[error("profiles live on different grids")]
    GridMismatch,

    /// An interpolation query left the profile domain.
    #[error("omega = {omega} is outside the profile domain [{a}, {b}]")]
    OmegaOutOfRange { omega: f64, a: f64, b: f64 },

    /// An ansatz mapped a space-time point outside the profile domain.
    #[error("omega = {omega} out of range at (x, t) = ({x}, {t})")]
    OmegaOutOfRangeAt { omega: f64, x: f64, t: f64 },

    /// The ansatz is singular at this time (t <= 0 for power-type maps).
    #[error("ansatz requires t > 0 (got t = {t})")]
    BadTimeDomain { t: f64 },

    /// The space-time grid is too small for the residual stencils.
    #[error("field grid too small for the residual stencils: {0}")]
    GridTooSmall(&'static str),

    /// A closed-form profile is evaluated at one of its poles.
    #[error("closed-form solution is singular at omega = {omega}")]
    Singularity { omega: f64 },

    /// Text deserialization failure.
    #[error("parse error: {0}")]
    Parse(String),
}
