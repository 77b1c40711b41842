//! Independent reference integrator for reduced IVPs.
//!
//! A Dormand-Prince 5(4) pair with an embedded error estimate and a
//! fourth-order dense-output interpolant integrates the first-order system
//! (phi, phi', phi'')' = (phi', phi'', phi''') and samples the solution at
//! the requested grid nodes. The path is entirely separate from the
//! finite-difference scheme, so disagreement between the two indicts the
//! scheme rather than the data.

use crate::error::{Error, Result};
use crate::fdsolver::{Grid, SolutionProfile};
use crate::reduce::{GenericOde, ReducedIvp};

/// Tolerances and step budget of the reference integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_steps: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_steps: 2_000_000,
        }
    }
}

/// Componentwise comparison of two profiles on the same grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileComparison {
    pub max_abs_diff: f64,
    /// Absolute difference scaled by max(1, max|p1|).
    pub max_rel_diff: f64,
    /// 1-based node index of the largest difference.
    pub argmax_index: usize,
}

const BLOW_UP_BOUND: f64 = 1e12;

type State = [f64; 3];

#[inline]
fn axpy(y: &State, h: f64, k: &State) -> State {
    [y[0] + h * k[0], y[1] + h * k[1], y[2] + h * k[2]]
}

fn rhs(ode: &GenericOde, omega: f64, y: &State) -> Result<State> {
    Ok([y[1], y[2], ode.third_derivative(omega, y[0], y[1], y[2])?])
}

// Dormand-Prince 5(4) coefficients.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
// Error weights b - b_hat.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
// Dense-output weights.
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

struct DenseSegment {
    t0: f64,
    h: f64,
    rcont: [State; 5],
}

impl DenseSegment {
    /// Quartic interpolant of the accepted step, evaluated at omega.
    fn eval(&self, omega: f64) -> f64 {
        let theta = (omega - self.t0) / self.h;
        let theta1 = 1.0 - theta;
        let c = &self.rcont;
        c[0][0] + theta * (c[1][0] + theta1 * (c[2][0] + theta * (c[3][0] + theta1 * c[4][0])))
    }
}

/// Integrates the generic ODE from arbitrary initial data, sampling the
/// solution at the nodes of `grid`. The returned profile stores the number
/// of accepted steps in `iterations`.
pub fn rk_solve_from(
    ode: &GenericOde,
    grid: &Grid,
    y0: State,
    cfg: &OracleConfig,
) -> Result<SolutionProfile> {
    if cfg.rel_tol <= 0.0 || cfg.abs_tol <= 0.0 {
        return Err(Error::BadParameters("oracle tolerances must be positive"));
    }
    ode.validate()?;
    let (a, b) = (grid.a(), grid.b());
    let mut phi = vec![0.0_f64; grid.node_count()];
    phi[0] = y0[0];
    let mut next_node = 1usize;

    let mut t = a;
    let mut y = y0;
    let mut k1 = rhs(ode, t, &y)?;
    let mut h = initial_step(ode, t, &y, &k1, b - a, cfg)?;
    let mut accepted = 0usize;
    let mut steps = 0usize;

    while t < b {
        steps += 1;
        if steps > cfg.max_steps {
            return Err(Error::MaxStepsExceeded { omega: t });
        }
        if h < f64::EPSILON * t.abs().max(1.0) {
            return Err(Error::StepSizeUnderflow { omega: t });
        }
        h = h.min(b - t);

        let k2 = rhs(ode, t + C2 * h, &axpy(&y, h * A21, &k1))?;
        let y3 = [
            y[0] + h * (A31 * k1[0] + A32 * k2[0]),
            y[1] + h * (A31 * k1[1] + A32 * k2[1]),
            y[2] + h * (A31 * k1[2] + A32 * k2[2]),
        ];
        let k3 = rhs(ode, t + C3 * h, &y3)?;
        let y4 = [
            y[0] + h * (A41 * k1[0] + A42 * k2[0] + A43 * k3[0]),
            y[1] + h * (A41 * k1[1] + A42 * k2[1] + A43 * k3[1]),
            y[2] + h * (A41 * k1[2] + A42 * k2[2] + A43 * k3[2]),
        ];
        let k4 = rhs(ode, t + C4 * h, &y4)?;
        let y5 = [
            y[0] + h * (A51 * k1[0] + A52 * k2[0] + A53 * k3[0] + A54 * k4[0]),
            y[1] + h * (A51 * k1[1] + A52 * k2[1] + A53 * k3[1] + A54 * k4[1]),
            y[2] + h * (A51 * k1[2] + A52 * k2[2] + A53 * k3[2] + A54 * k4[2]),
        ];
        let k5 = rhs(ode, t + C5 * h, &y5)?;
        let y6 = [
            y[0] + h * (A61 * k1[0] + A62 * k2[0] + A63 * k3[0] + A64 * k4[0] + A65 * k5[0]),
            y[1] + h * (A61 * k1[1] + A62 * k2[1] + A63 * k3[1] + A64 * k4[1] + A65 * k5[1]),
            y[2] + h * (A61 * k1[2] + A62 * k2[2] + A63 * k3[2] + A64 * k4[2] + A65 * k5[2]),
        ];
        let k6 = rhs(ode, t + h, &y6)?;
        let y_new = [
            y[0] + h * (B1 * k1[0] + B3 * k3[0] + B4 * k4[0] + B5 * k5[0] + B6 * k6[0]),
            y[1] + h * (B1 * k1[1] + B3 * k3[1] + B4 * k4[1] + B5 * k5[1] + B6 * k6[1]),
            y[2] + h * (B1 * k1[2] + B3 * k3[2] + B4 * k4[2] + B5 * k5[2] + B6 * k6[2]),
        ];
        let k7 = rhs(ode, t + h, &y_new)?;

        let mut err_sq = 0.0_f64;
        for i in 0..3 {
            let e =
                h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let sc = cfg.abs_tol + cfg.rel_tol * y[i].abs().max(y_new[i].abs());
            err_sq += (e / sc) * (e / sc);
        }
        let err = (err_sq / 3.0).sqrt();

        if !err.is_finite() {
            h *= 0.25;
            continue;
        }
        if err <= 1.0 {
            let magnitude = y_new.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
            if !magnitude.is_finite() || magnitude > BLOW_UP_BOUND {
                return Err(Error::BlowUp {
                    omega: t + h,
                    magnitude,
                });
            }
            // Dense-output coefficients of the accepted step.
            let ydiff = [y_new[0] - y[0], y_new[1] - y[1], y_new[2] - y[2]];
            let mut rcont3 = State::default();
            let mut rcont4 = State::default();
            let mut rcont5 = State::default();
            for i in 0..3 {
                rcont3[i] = h * k1[i] - ydiff[i];
                rcont4[i] = ydiff[i] - h * k7[i] - rcont3[i];
                rcont5[i] = h
                    * (D1 * k1[i] + D3 * k3[i] + D4 * k4[i] + D5 * k5[i] + D6 * k6[i] + D7 * k7[i]);
            }
            let segment = DenseSegment {
                t0: t,
                h,
                rcont: [y, ydiff, rcont3, rcont4, rcont5],
            };
            let t_end = t + h;
            while next_node < grid.node_count()
                && grid.node(next_node) <= t_end + 1e-14 * t_end.abs().max(1.0)
            {
                let w = grid.node(next_node).min(t_end);
                phi[next_node] = segment.eval(w);
                next_node += 1;
            }
            accepted += 1;
            t = t_end;
            y = y_new;
            k1 = k7;
            h *= (0.9 * err.powf(-0.2)).clamp(0.2, 10.0);
        } else {
            h *= (0.9 * err.powf(-0.2)).clamp(0.1, 1.0);
        }
    }
    // Anything the node loop left unset (at most the endpoint) is the
    // final state.
    while next_node < grid.node_count() {
        phi[next_node] = y[0];
        next_node += 1;
    }
    Ok(SolutionProfile {
        grid: grid.clone(),
        phi,
        iterations: accepted,
        final_delta: 0.0,
    })
}

/// Hairer-style cheap starting step: balance the size of the state against
/// the size of its derivative, refined by one explicit Euler probe.
fn initial_step(
    ode: &GenericOde,
    t: f64,
    y: &State,
    f0: &State,
    span: f64,
    cfg: &OracleConfig,
) -> Result<f64> {
    let sc = |i: usize| cfg.abs_tol + cfg.rel_tol * y[i].abs();
    let d0 = (0..3).map(|i| (y[i] / sc(i)).powi(2)).sum::<f64>().sqrt();
    let d1 = (0..3).map(|i| (f0[i] / sc(i)).powi(2)).sum::<f64>().sqrt();
    let h0 = if d0 < 1e-5 || d1 < 1e-5 {
        1e-6
    } else {
        0.01 * d0 / d1
    };
    let h0 = h0.min(span);
    let y1 = axpy(y, h0, f0);
    let f1 = rhs(ode, t + h0, &y1)?;
    let d2 = (0..3)
        .map(|i| ((f1[i] - f0[i]) / sc(i)).powi(2))
        .sum::<f64>()
        .sqrt()
        / h0;
    let h1 = if d1.max(d2) <= 1e-15 {
        (h0 * 1e-3).max(1e-6)
    } else {
        (0.01 / d1.max(d2)).powf(0.2)
    };
    Ok(h1.min(100.0 * h0).min(span))
}

/// Integrates a reduced IVP from its initial data (gamma, 0, 0).
///
/// The grid must span the IVP's domain; the profile is sampled at its
/// nodes via the dense interpolant.
pub fn rk_solve(ivp: &ReducedIvp, grid: &Grid, cfg: &OracleConfig) -> Result<SolutionProfile> {
    if grid.a() != ivp.domain.0 || grid.b() != ivp.domain.1 {
        return Err(Error::GridMismatch);
    }
    rk_solve_from(&ivp.ode, grid, [ivp.gamma, 0.0, 0.0], cfg)
}

/// Componentwise maxima of |p1 - p2|; the relative figure is scaled by
/// max(1, max|p1|). Requires identical grids.
pub fn compare_profiles(p1: &SolutionProfile, p2: &SolutionProfile) -> Result<ProfileComparison> {
    if p1.grid != p2.grid {
        return Err(Error::GridMismatch);
    }
    let scale = p1.phi.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
    let mut max_abs = 0.0_f64;
    let mut argmax = 0usize;
    for (i, (a, b)) in p1.phi.iter().zip(&p2.phi).enumerate() {
        let d = (a - b).abs();
        if d > max_abs {
            max_abs = d;
            argmax = i;
        }
    }
    Ok(ProfileComparison {
        max_abs_diff: max_abs,
        max_rel_diff: max_abs / scale,
        argmax_index: argmax + 1,
    })
}
