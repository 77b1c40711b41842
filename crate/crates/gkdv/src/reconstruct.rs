//! Mapping solved phi(w) profiles back to u(x, t) and verifying the
//! result against the governing PDE.
//!
//! Profiles are interpolated linearly (the solver grids are dense enough
//! that interpolation error is subordinate to scheme error) and never
//! extrapolated: a mapped w outside the profile domain is an error, since
//! silent extrapolation would corrupt residual studies.

use crate::error::{Error, Result};
use crate::fdsolver::SolutionProfile;
use crate::model::{CoefficientFunction, GKdVEquation};
use crate::num::real_pow;
use crate::reduce::Ansatz;

/// A reconstructed u(x, t) sample grid, stored x-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceTimeField {
    x_nodes: Vec<f64>,
    t_nodes: Vec<f64>,
    u: Vec<f64>,
}

impl SpaceTimeField {
    pub fn x_nodes(&self) -> &[f64] {
        &self.x_nodes
    }

    pub fn t_nodes(&self) -> &[f64] {
        &self.t_nodes
    }

    pub fn value(&self, ix: usize, it: usize) -> f64 {
        self.u[ix * self.t_nodes.len() + it]
    }

    /// One fixed-t snapshot of the field, in x order.
    pub fn time_slice(&self, it: usize) -> Vec<f64> {
        (0..self.x_nodes.len())
            .map(|ix| self.value(ix, it))
            .collect()
    }
}

/// Max-norm and L2-norm of the pointwise PDE residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualNorms {
    pub max_abs: f64,
    pub l2: f64,
}

/// Piecewise-linear interpolation of a profile, exact at the nodes.
pub fn interpolate(profile: &SolutionProfile, omega: f64) -> Result<f64> {
    let grid = &profile.grid;
    let (a, b) = (grid.a(), grid.b());
    if !(a..=b).contains(&omega) {
        return Err(Error::OmegaOutOfRange { omega, a, b });
    }
    if omega == b {
        return Ok(profile.phi[grid.n()]);
    }
    let i = (((omega - a) / grid.h()).floor() as usize).min(grid.n() - 1);
    // Hitting a node returns the stored value bitwise; the two checks also
    // absorb the float dust the division may have introduced.
    if omega == grid.node(i) {
        return Ok(profile.phi[i]);
    }
    if omega == grid.node(i + 1) {
        return Ok(profile.phi[i + 1]);
    }
    let theta = (omega - grid.node(i)) / grid.h();
    Ok(profile.phi[i] + theta * (profile.phi[i + 1] - profile.phi[i]))
}

/// Evaluates u(x, t) = amplitude(t) * phi(w(x, t)) on the tensor grid of
/// `x_nodes` and `t_nodes`.
pub fn reconstruct(
    ansatz: &Ansatz,
    profile: &SolutionProfile,
    x_nodes: &[f64],
    t_nodes: &[f64],
) -> Result<SpaceTimeField> {
    if x_nodes.is_empty() || t_nodes.is_empty() {
        return Err(Error::GridTooSmall(
            "need at least one x node and one t node",
        ));
    }
    if !strictly_increasing(x_nodes) || !strictly_increasing(t_nodes) {
        return Err(Error::BadParameters(
            "x and t nodes must be strictly increasing",
        ));
    }
    let mut u = Vec::with_capacity(x_nodes.len() * t_nodes.len());
    for &x in x_nodes {
        for &t in t_nodes {
            let (omega, amplitude) = ansatz.map(x, t)?;
            let phi = interpolate(profile, omega).map_err(|e| match e {
                Error::OmegaOutOfRange { omega, .. } => Error::OmegaOutOfRangeAt { omega, x, t },
                other => other,
            })?;
            u.push(amplitude * phi);
        }
    }
    Ok(SpaceTimeField {
        x_nodes: x_nodes.to_vec(),
        t_nodes: t_nodes.to_vec(),
        u,
    })
}

fn strictly_increasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

fn uniform_spacing(v: &[f64], what: &'static str) -> Result<f64> {
    let d = v[1] - v[0];
    for w in v.windows(2) {
        if ((w[1] - w[0]) - d).abs() > 1e-9 * d.abs() {
            return Err(Error::BadParameters(what));
        }
    }
    Ok(d)
}

/// Residual R = u_t + u^n u_x + h(t) u + g(t) u_xxx of the reconstructed
/// field under central differences, over interior nodes. Returns the max
/// and the discrete L2 norm sqrt(sum R^2 dx dt).
pub fn pde_residual(eq: &GKdVEquation, field: &SpaceTimeField) -> Result<ResidualNorms> {
    let nx = field.x_nodes.len();
    let nt = field.t_nodes.len();
    if nx < 5 {
        return Err(Error::GridTooSmall(
            "need at least 5 x nodes for the u_xxx stencil",
        ));
    }
    if nt < 3 {
        return Err(Error::GridTooSmall(
            "need at least 3 t nodes for the u_t stencil",
        ));
    }
    let dx = uniform_spacing(&field.x_nodes, "x nodes must be uniformly spaced")?;
    let dt = uniform_spacing(&field.t_nodes, "t nodes must be uniformly spaced")?;

    let mut max_abs = 0.0_f64;
    let mut sum_sq = 0.0_f64;
    for ix in 2..nx - 2 {
        for it in 1..nt - 1 {
            let t = field.t_nodes[it];
            let u = field.value(ix, it);
            let u_t = (field.value(ix, it + 1) - field.value(ix, it - 1)) / (2.0 * dt);
            let u_x = (field.value(ix + 1, it) - field.value(ix - 1, it)) / (2.0 * dx);
            let u_xxx = (field.value(ix + 2, it) - 2.0 * field.value(ix + 1, it)
                + 2.0 * field.value(ix - 1, it)
                - field.value(ix - 2, it))
                / (2.0 * dx * dx * dx);
            let u_pow_n = real_pow(u, eq.n).ok_or(Error::NegativeBase {
                base: u,
                exponent: eq.n,
            })?;
            let damping = match eq.h {
                CoefficientFunction::Zero => 0.0,
                h => h.eval(t)? * u,
            };
            let res = u_t + u_pow_n * u_x + damping + eq.g.eval(t)? * u_xxx;
            max_abs = max_abs.max(res.abs());
            sum_sq += res * res;
        }
    }
    Ok(ResidualNorms {
        max_abs,
        l2: (sum_sq * dx * dt).sqrt(),
    })
}
