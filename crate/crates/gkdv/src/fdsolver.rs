//! Explicit second-order finite-difference solver for reduced IVPs.
//!
//! The third derivative is discretized with the wide five-point stencil
//! (phi_{i+2} - 2 phi_{i+1} + 2 phi_{i-1} - phi_{i-2}) / (2 h^3) and the
//! update is solved for phi_{i+2}, giving a forward march across the grid.
//! The initial data pin the first three nodes to gamma, and the ghost value
//! phi_0 = phi_1 closes the stencil at the left edge. Convergence of the
//! outer fixed-point loop is measured by
//! max_{1<=i<=N} |phi^{k+1}_i - phi^k_i| / max_{1<=i<=N} |phi^{k+1}_i|.
//!
//! A solve is strictly sequential: the march order is part of the contract
//! and identical inputs give bitwise-identical profiles.

use crate::error::{Error, Result};
use crate::num::real_pow;
use crate::reduce::{GenericOde, ReducedIvp};

/// Uniform grid w_i = a + (i-1) h, i = 1..N+1, h = (b-a)/N.
///
/// Stored with 0-based node indices; reported indices (divergence
/// locations, difference maxima) use the 1-based numbering above.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    a: f64,
    b: f64,
    n: usize,
    h: f64,
}

impl Grid {
    /// `n` is the number of cells; the grid has `n + 1` nodes.
    pub fn new(a: f64, b: f64, n: usize) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || a >= b {
            return Err(Error::BadGrid {
                a,
                b,
                n,
                reason: "need finite a < b",
            });
        }
        if n < 8 {
            return Err(Error::BadGrid {
                a,
                b,
                n,
                reason: "need at least 8 cells",
            });
        }
        let h = (b - a) / n as f64;
        Ok(Self { a, b, n, h })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Number of cells (N); there are N + 1 nodes.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn node_count(&self) -> usize {
        self.n + 1
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// Node i (0-based), computed as a + i h.
    pub fn node(&self, i: usize) -> f64 {
        self.a + i as f64 * self.h
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.n).map(|i| self.node(i))
    }
}

/// Knobs of the fixed-point solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Grid cells N.
    pub n: usize,
    /// Relative convergence tolerance of the outer iteration.
    pub tol: f64,
    /// Iteration cap.
    pub max_iters: usize,
    /// Any iterate entry beyond this magnitude counts as divergence.
    pub overflow_bound: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            n: 100_000,
            tol: 1e-8,
            max_iters: 10_000,
            overflow_bound: 1e12,
        }
    }
}

impl SolverConfig {
    pub fn with_n(n: usize) -> Self {
        Self {
            n,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.tol <= 0.0 {
            return Err(Error::BadParameters("tol must be positive"));
        }
        if self.max_iters == 0 {
            return Err(Error::BadParameters("max_iters must be at least 1"));
        }
        Ok(())
    }
}

/// A discrete phi(w) profile with convergence metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionProfile {
    pub grid: Grid,
    pub phi: Vec<f64>,
    pub iterations: usize,
    pub final_delta: f64,
}

/// What a solve produced.
#[derive(Debug, Clone, PartialEq)]
pub enum SolveOutcome {
    Converged(SolutionProfile),
    /// An iterate left the admissible range. `at_index` is the 1-based
    /// node index of the first offending entry.
    Diverged {
        at_iteration: usize,
        at_index: usize,
        magnitude: f64,
    },
    MaxItersExceeded(SolutionProfile),
}

impl SolveOutcome {
    pub fn status(&self) -> &'static str {
        match self {
            Self::Converged(_) => "converged",
            Self::Diverged { .. } => "diverged",
            Self::MaxItersExceeded(_) => "max_iters",
        }
    }

    pub fn profile(&self) -> Option<&SolutionProfile> {
        match self {
            Self::Converged(p) | Self::MaxItersExceeded(p) => Some(p),
            Self::Diverged { .. } => None,
        }
    }

    pub fn into_converged(self) -> Result<SolutionProfile> {
        match self {
            Self::Converged(p) => Ok(p),
            other => Err(Error::StudySolveFailed {
                n: 0,
                status: other.status().to_string(),
            }),
        }
    }
}

/// One update of the explicit scheme, solved for phi_{i+2}:
///
/// phi_{i+2} = 2 phi_{i+1} - 2 phi_{i-1} + phi_{i-2}
///             - (2h/a3) a2 (phi_{i+1} - 2 phi_i + phi_{i-1})
///             - (h^2/a3) (q w_i + s) (phi_{i+1} - phi_{i-1})
///             - (2h^3 r / a3) phi_i + g/a3,
///
/// where `g` carries the nonlinear contribution (see [`nonlinear_term`]).
#[allow(clippy::too_many_arguments)]
pub fn update_point(
    ode: &GenericOde,
    h: f64,
    omega_i: f64,
    phi_im2: f64,
    phi_im1: f64,
    phi_i: f64,
    phi_ip1: f64,
    g: f64,
) -> f64 {
    2.0 * phi_ip1 - 2.0 * phi_im1 + phi_im2
        - (2.0 * h / ode.a3) * ode.a2 * (phi_ip1 - 2.0 * phi_i + phi_im1)
        - (h * h / ode.a3) * (ode.q * omega_i + ode.s) * (phi_ip1 - phi_im1)
        - (2.0 * h * h * h * ode.r / ode.a3) * phi_i
        + g / ode.a3
}

/// The nonlinear contribution g_i = -h^2 p phi_i^m (phi_{i+1} - phi_{i-1}).
pub fn nonlinear_term(
    ode: &GenericOde,
    h: f64,
    phi_im1: f64,
    phi_i: f64,
    phi_ip1: f64,
) -> Result<f64> {
    if ode.p == 0.0 {
        return Ok(0.0);
    }
    let powed = real_pow(phi_i, ode.m).ok_or(Error::NegativeBase {
        base: phi_i,
        exponent: ode.m,
    })?;
    Ok(-h * h * ode.p * powed * (phi_ip1 - phi_im1))
}

/// One full pass of the scheme over the grid.
///
/// The first three nodes stay pinned at the initial data taken from
/// `phi_prev`, the ghost value phi_0 = phi_1 closes the left edge, node 4
/// comes from the i = 2 instance of the update and the remaining nodes
/// from i = 3..N-1. All stencil values, including the nonlinear factor,
/// are the ones already produced by the march, so a sweep is a complete
/// explicit pass: it reaches the fixed point of the difference equations
/// in one application, and a second sweep reproduces it bitwise (which is
/// what the convergence criterion in [`solve`] detects).
pub fn sweep(ivp: &ReducedIvp, grid: &Grid, phi_prev: &[f64]) -> Result<Vec<f64>> {
    let n = grid.n();
    debug_assert_eq!(phi_prev.len(), n + 1);
    debug_assert!(phi_prev[..3].iter().all(|&v| v == ivp.gamma));
    let ode = &ivp.ode;
    let h = grid.h();

    let mut phi = vec![0.0_f64; n + 1];
    phi[..3].copy_from_slice(&phi_prev[..3]);

    // i = 2 with ghost phi_0 = phi_1 fills node 4 (index 3).
    let g2 = nonlinear_term(ode, h, phi[0], phi[1], phi[2])?;
    phi[3] = update_point(ode, h, grid.node(1), phi[0], phi[0], phi[1], phi[2], g2);

    // i = 3..N-1 fills nodes 5..N+1 (indices 4..=n).
    for c in 2..=n - 2 {
        let g = nonlinear_term(ode, h, phi[c - 1], phi[c], phi[c + 1])?;
        phi[c + 2] = update_point(
            ode,
            h,
            grid.node(c),
            phi[c - 2],
            phi[c - 1],
            phi[c],
            phi[c + 1],
            g,
        );
    }
    Ok(phi)
}

/// Convergence metric max_{1<=i<=N} |a_i - b_i| / max_{1<=i<=N} |a_i|
/// (the last node is excluded from both maxima).
fn convergence_delta(current: &[f64], previous: &[f64]) -> f64 {
    let upto = current.len() - 1;
    let mut num = 0.0_f64;
    let mut den = 0.0_f64;
    for i in 0..upto {
        num = num.max((current[i] - previous[i]).abs());
        den = den.max(current[i].abs());
    }
    if den == 0.0 {
        if num == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        num / den
    }
}

/// Index (0-based) and magnitude of the first non-admissible entry, if any.
fn first_overflow(phi: &[f64], bound: f64) -> Option<(usize, f64)> {
    phi.iter().enumerate().find_map(|(i, &v)| {
        if !v.is_finite() || v.abs() > bound {
            Some((i, v.abs()))
        } else {
            None
        }
    })
}

/// Solves a reduced IVP by fixed-point iteration of [`sweep`].
///
/// The iteration starts from phi = gamma at the first three nodes and zero
/// everywhere else, and stops when the convergence metric drops below
/// `cfg.tol`, when an entry leaves the admissible range, or when the
/// iteration cap is hit.
pub fn solve(ivp: &ReducedIvp, cfg: &SolverConfig) -> Result<SolveOutcome> {
    cfg.validate()?;
    ivp.ode.validate()?;
    if ivp.gamma == 0.0 {
        return Err(Error::ZeroGamma);
    }
    let grid = Grid::new(ivp.domain.0, ivp.domain.1, cfg.n)?;

    let mut phi_prev = vec![0.0_f64; grid.node_count()];
    phi_prev[..3].fill(ivp.gamma);

    let mut delta = f64::INFINITY;
    for k in 1..=cfg.max_iters {
        let phi_next = sweep(ivp, &grid, &phi_prev)?;
        if let Some((idx, magnitude)) = first_overflow(&phi_next, cfg.overflow_bound) {
            return Ok(SolveOutcome::Diverged {
                at_iteration: k,
                at_index: idx + 1,
                magnitude,
            });
        }
        delta = convergence_delta(&phi_next, &phi_prev);
        if delta <= cfg.tol {
            return Ok(SolveOutcome::Converged(SolutionProfile {
                grid,
                phi: phi_next,
                iterations: k,
                final_delta: delta,
            }));
        }
        phi_prev = phi_next;
    }
    Ok(SolveOutcome::MaxItersExceeded(SolutionProfile {
        grid,
        phi: phi_prev,
        iterations: cfg.max_iters,
        final_delta: delta,
    }))
}

/// Maximum residual of the discretized ODE over the interior nodes
/// i = 3..N-1, using the same stencils as the scheme.
pub fn discrete_residual(ode: &GenericOde, grid: &Grid, phi: &[f64]) -> Result<f64> {
    ode.validate()?;
    let n = grid.n();
    if phi.len() != n + 1 {
        return Err(Error::GridMismatch);
    }
    let h = grid.h();
    let mut worst = 0.0_f64;
    for c in 2..=n - 2 {
        let d3 =
            (phi[c + 2] - 2.0 * phi[c + 1] + 2.0 * phi[c - 1] - phi[c - 2]) / (2.0 * h * h * h);
        let d2 = (phi[c + 1] - 2.0 * phi[c] + phi[c - 1]) / (h * h);
        let d1 = (phi[c + 1] - phi[c - 1]) / (2.0 * h);
        let adv = ode.advection(grid.node(c), phi[c])?;
        let res = ode.a3 * d3 + ode.a2 * d2 + adv * d1 + ode.r * phi[c];
        worst = worst.max(res.abs());
    }
    Ok(worst)
}

/// Solves the IVP on each grid in `ns` and on a fine reference grid, and
/// tabulates abs_error(N) = max_i |phi_ref(w_i) - phi_N(w_i)| over the
/// coarse nodes. Every N must divide N_ref so the nodes coincide.
pub fn convergence_study(
    ivp: &ReducedIvp,
    ns: &[usize],
    n_ref: usize,
    cfg: &SolverConfig,
) -> Result<Vec<(usize, f64)>> {
    if ns.is_empty() {
        return Err(Error::BadParameters("need at least one grid size"));
    }
    for &n in ns {
        if n >= n_ref {
            return Err(Error::BadParameters(
                "reference grid must be finer than every study grid",
            ));
        }
        if !n_ref.is_multiple_of(n) {
            return Err(Error::NonNestedGrids { n, n_ref });
        }
    }
    let reference = match solve(ivp, &SolverConfig { n: n_ref, ..*cfg })? {
        SolveOutcome::Converged(p) => p,
        other => {
            return Err(Error::StudySolveFailed {
                n: n_ref,
                status: other.status().to_string(),
            })
        }
    };
    let mut table = Vec::with_capacity(ns.len());
    for &n in ns {
        let coarse = match solve(ivp, &SolverConfig { n, ..*cfg })? {
            SolveOutcome::Converged(p) => p,
            other => {
                return Err(Error::StudySolveFailed {
                    n,
                    status: other.status().to_string(),
                })
            }
        };
        let stride = n_ref / n;
        let err = coarse
            .phi
            .iter()
            .enumerate()
            .map(|(i, &v)| (reference.phi[i * stride] - v).abs())
            .fold(0.0_f64, f64::max);
        table.push((n, err));
    }
    Ok(table)
}

/// Least-squares slope of log(err) against log(N) for a study table.
pub fn loglog_slope(table: &[(usize, f64)]) -> f64 {
    let pts: Vec<(f64, f64)> = table
        .iter()
        .filter(|(_, e)| *e > 0.0)
        .map(|&(n, e)| ((n as f64).ln(), e.ln()))
        .collect();
    let m = pts.len() as f64;
    if pts.len() < 2 {
        return f64::NAN;
    }
    let mean_x = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let mean_y = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mean_x) * (p.0 - mean_x)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::close;
    use crate::reduce::ReductionCase;
    use crate::testutil::SplitMix;

    fn standard_ivp() -> ReducedIvp {
        ReducedIvp {
            ode: ReductionCase::PowerLaw {
                n: 1.0,
                rho: 1.0,
                epsilon: -1.0,
            }
            .reduced_ode()
            .unwrap(),
            gamma: 0.5,
            domain: (0.0, 50.0),
            ansatz: None,
        }
    }

    #[test]
    fn grid_examples() {
        let g = Grid::new(0.0, 50.0, 100_000).unwrap();
        assert_eq!(g.h(), 5e-4);
        assert_eq!(g.node(0), 0.0);
        assert_eq!(g.node(100_000), 50.0);

        let g = Grid::new(0.0, 1.0, 10).unwrap();
        assert!(close(g.node(1), 0.1, 1e-15));
        assert_eq!(g.node_count(), 11);

        assert!(matches!(
            Grid::new(1.0, 0.0, 10),
            Err(Error::BadGrid { .. })
        ));
        assert!(matches!(Grid::new(0.0, 1.0, 4), Err(Error::BadGrid { .. })));
    }

    #[test]
    fn update_point_examples() {
        let ode = standard_ivp().ode;
        // All phi equal gamma, no nonlinearity: gamma (1 - 2 h^3 r / a3).
        let h = 0.5;
        let got = update_point(&ode, h, 1.0, 0.5, 0.5, 0.5, 0.5, 0.0);
        assert!(close(got, 11.0 / 24.0, 1e-15), "{got}");

        // Pure third-derivative stencil.
        let pure = GenericOde::new(1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0).unwrap();
        assert_eq!(update_point(&pure, 0.1, 0.0, 1.0, 2.0, 3.0, 4.0, 0.0), 5.0);
    }

    #[test]
    fn nonlinear_term_examples() {
        let ode = GenericOde::new(1.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0).unwrap();
        assert_eq!(nonlinear_term(&ode, 1.0, 2.0, 3.0, 2.0).unwrap(), 0.0);
        assert_eq!(nonlinear_term(&ode, 1.0, 0.0, 2.0, 1.0).unwrap(), -2.0);
        let frac = GenericOde::new(1.0, 0.0, 1.0, 0.5, 0.0, 0.0, 0.0).unwrap();
        assert!(matches!(
            nonlinear_term(&frac, 1.0, 0.0, -1.0, 1.0),
            Err(Error::NegativeBase { .. })
        ));
        let off = GenericOde::new(1.0, 0.0, 0.0, 0.5, 0.0, 0.0, 0.0).unwrap();
        assert_eq!(nonlinear_term(&off, 1.0, 0.0, -1.0, 1.0).unwrap(), 0.0);
    }

    /// Eq.-(19b)-shaped transcription of the update for a2 = 0, p = 1:
    /// independent oracle for the scheme formula.
    #[allow(clippy::too_many_arguments)]
    fn paper_scheme_update(
        eps: f64,
        rho: f64,
        n: f64,
        h: f64,
        w_i: f64,
        phi_im2: f64,
        phi_im1: f64,
        phi_i: f64,
        phi_ip1: f64,
    ) -> f64 {
        let g_i = -h * h * phi_i.powf(n) * (phi_ip1 - phi_im1);
        let bracket = (2.0 * eps + (rho + 1.0) / 3.0 * h * h * w_i) * phi_ip1
            - 2.0 * h.powi(3) / (3.0 * n) * (rho - 2.0) * phi_i
            - (2.0 * eps + (rho + 1.0) / 3.0 * h * h * w_i) * phi_im1
            + eps * phi_im2
            + g_i;
        bracket / eps
    }

    #[test]
    fn scheme_matches_paper_transcription() {
        let mut rng = SplitMix::new(777);
        for _ in 0..1000 {
            let n = rng.range(1.0, 3.0);
            let rho = rng.range(-1.5, 2.5);
            let eps = if rng.next_f64() < 0.5 { -1.0 } else { 1.0 };
            let ode = ReductionCase::PowerLaw {
                n,
                rho,
                epsilon: eps,
            }
            .reduced_ode()
            .unwrap();
            let h = rng.range(1e-4, 0.5);
            let w_i = rng.range(0.0, 50.0);
            let vals: Vec<f64> = (0..4).map(|_| rng.range(0.05, 2.0)).collect();
            let g = nonlinear_term(&ode, h, vals[1], vals[2], vals[3]).unwrap();
            let ours = update_point(&ode, h, w_i, vals[0], vals[1], vals[2], vals[3], g);
            let paper =
                paper_scheme_update(eps, rho, n, h, w_i, vals[0], vals[1], vals[2], vals[3]);
            assert!(
                close(ours, paper, 1e-15),
                "mismatch: {ours} vs {paper} (n={n}, rho={rho}, eps={eps}, h={h})"
            );
        }
    }

    #[test]
    fn sweep_constant_fixed_point() {
        // rho = 2 gives r = 0: the constant profile solves the stencil.
        let ivp = ReducedIvp {
            ode: ReductionCase::PowerLaw {
                n: 1.0,
                rho: 2.0,
                epsilon: -1.0,
            }
            .reduced_ode()
            .unwrap(),
            gamma: 0.5,
            domain: (0.0, 1.0),
            ansatz: None,
        };
        let grid = Grid::new(0.0, 1.0, 16).unwrap();
        let prev = vec![0.5; 17];
        let next = sweep(&ivp, &grid, &prev).unwrap();
        assert_eq!(next, prev);
    }

    #[test]
    fn sweep_first_node_from_cold_start() {
        // From the (gamma, gamma, gamma, 0, ...) start, node 4 becomes
        // gamma (1 - 2 h^3 r / a3): differences vanish and g_2 = 0.
        let ivp = standard_ivp();
        let grid = Grid::new(0.0, 50.0, 100).unwrap();
        let mut prev = vec![0.0; 101];
        prev[..3].fill(ivp.gamma);
        let next = sweep(&ivp, &grid, &prev).unwrap();
        let h = grid.h();
        let expect = ivp.gamma * (1.0 - 2.0 * h.powi(3) * ivp.ode.r / ivp.ode.a3);
        assert!(close(next[3], expect, 1e-15));
        assert_eq!(&next[..3], &[0.5, 0.5, 0.5]);
    }

    #[test]
    fn sweep_pure_recurrence_toy() {
        let ivp = ReducedIvp {
            ode: GenericOde::new(1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0).unwrap(),
            gamma: 1.0,
            domain: (0.0, 1.0),
            ansatz: None,
        };
        let grid = Grid::new(0.0, 1.0, 8).unwrap();
        let mut prev = vec![0.0; 9];
        prev[..3].fill(1.0);
        let next = sweep(&ivp, &grid, &prev).unwrap();
        assert_eq!(next, vec![1.0; 9]);
    }

    #[test]
    fn solve_constant_solution_exactly() {
        for gamma in [0.5, 2.0, -1.0] {
            let ivp = ReducedIvp {
                ode: ReductionCase::PowerLaw {
                    n: 1.0,
                    rho: 2.0,
                    epsilon: -1.0,
                }
                .reduced_ode()
                .unwrap(),
                gamma,
                domain: (0.0, 50.0),
                ansatz: None,
            };
            match solve(&ivp, &SolverConfig::with_n(2000)).unwrap() {
                SolveOutcome::Converged(p) => {
                    assert!(p.iterations <= 2, "took {} iterations", p.iterations);
                    let worst = p
                        .phi
                        .iter()
                        .map(|v| (v - gamma).abs())
                        .fold(0.0_f64, f64::max);
                    assert!(worst <= 1e-12, "max deviation {worst}");
                }
                other => panic!("expected convergence, got {other:?}"),
            }
        }
    }

    #[test]
    fn solve_standard_solution_converges() {
        let outcome = solve(&standard_ivp(), &SolverConfig::with_n(20_000)).unwrap();
        let p = match outcome {
            SolveOutcome::Converged(p) => p,
            other => panic!("expected convergence, got {other:?}"),
        };
        // Pinned boundary triple, bitwise.
        assert_eq!(&p.phi[..3], &[0.5, 0.5, 0.5]);
        assert!(p.phi.iter().all(|v| v.is_finite()));
        // Damped oscillation: sign changes happen and the envelope decays.
        let changes = p.phi.windows(2).filter(|w| w[0] * w[1] < 0.0).count();
        assert!(
            changes > 4,
            "expected oscillation, saw {changes} sign changes"
        );
        let head = p.phi[..p.phi.len() / 4]
            .iter()
            .fold(0.0_f64, |m, v| m.max(v.abs()));
        let tail = p.phi[3 * p.phi.len() / 4..]
            .iter()
            .fold(0.0_f64, |m, v| m.max(v.abs()));
        assert!(
            tail < head,
            "envelope should decay: head {head}, tail {tail}"
        );
        // Fixed-point consistency: one more sweep stays within tol.
        let again = sweep(&standard_ivp(), &p.grid, &p.phi).unwrap();
        assert!(convergence_delta(&again, &p.phi) <= 1e-8);
        // Discrete residual bounded by 100 tol max|phi|.
        let res = discrete_residual(&standard_ivp().ode, &p.grid, &p.phi).unwrap();
        let scale = p.phi.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        assert!(
            res <= 100.0 * 1e-8 * scale,
            "residual {res} vs bound {}",
            100.0 * 1e-8 * scale
        );
    }

    #[test]
    fn solve_negative_rho_diverges() {
        let ivp = ReducedIvp {
            ode: ReductionCase::PowerLaw {
                n: 1.0,
                rho: -0.5,
                epsilon: -1.0,
            }
            .reduced_ode()
            .unwrap(),
            gamma: 0.5,
            domain: (0.0, 50.0),
            ansatz: None,
        };
        match solve(&ivp, &SolverConfig::with_n(20_000)).unwrap() {
            SolveOutcome::Diverged {
                at_index,
                magnitude,
                ..
            } => {
                assert!(at_index >= 1);
                assert!(magnitude > 1e12 || !magnitude.is_finite());
            }
            other => panic!("expected divergence, got {other:?}"),
        }
    }

    #[test]
    fn solve_determinism() {
        let cfg = SolverConfig::with_n(5_000);
        let a = solve(&standard_ivp(), &cfg).unwrap();
        let b = solve(&standard_ivp(), &cfg).unwrap();
        match (a, b) {
            (SolveOutcome::Converged(pa), SolveOutcome::Converged(pb)) => {
                assert_eq!(pa.phi, pb.phi);
                assert_eq!(pa.iterations, pb.iterations);
            }
            other => panic!("expected two converged runs, got {other:?}"),
        }
    }

    #[test]
    fn residual_zero_for_constant_with_r_zero() {
        let ode = ReductionCase::PowerLaw {
            n: 1.0,
            rho: 2.0,
            epsilon: -1.0,
        }
        .reduced_ode()
        .unwrap();
        let grid = Grid::new(0.0, 1.0, 32).unwrap();
        let phi = vec![0.7; 33];
        assert_eq!(discrete_residual(&ode, &grid, &phi).unwrap(), 0.0);
    }

    #[test]
    fn convergence_study_on_constant_case_is_exact() {
        let ivp = ReducedIvp {
            ode: ReductionCase::PowerLaw {
                n: 1.0,
                rho: 2.0,
                epsilon: -1.0,
            }
            .reduced_ode()
            .unwrap(),
            gamma: 0.5,
            domain: (0.0, 50.0),
            ansatz: None,
        };
        let cfg = SolverConfig::default();
        let table = convergence_study(&ivp, &[100, 200], 400, &cfg).unwrap();
        for (_, err) in table {
            assert!(err <= 1e-12);
        }
        assert!(matches!(
            convergence_study(&ivp, &[300], 400, &cfg),
            Err(Error::NonNestedGrids { .. })
        ));
    }

    #[test]
    fn study_slope_standard_solution_is_first_order() {
        let table = convergence_study(
            &standard_ivp(),
            &[2500, 5000, 10_000, 20_000],
            40_000,
            &SolverConfig::default(),
        )
        .unwrap();
        for w in table.windows(2) {
            assert!(w[1].1 < w[0].1, "error not decreasing: {table:?}");
        }
        let slope = loglog_slope(&table);
        assert!(
            (-1.4..=-0.6).contains(&slope),
            "slope {slope} out of range; table {table:?}"
        );
    }
}
