//! Closed-form solutions used for validation and demonstration.
//!
//! The constant-coefficient member u_t + u^n u_x + eps u_xxx = 0 has
//! traveling-wave solutions
//!
//!   phi = ( sigma (n+1)(n+2) / (2 cosh^2((n/2) sqrt(sigma/eps) w + C)) )^{1/n}
//!
//! and the sinh counterpart with a leading minus sign under the root.
//! Alongside them lives the exact constant solution of the rho = 2
//! dilatation reduction.

use crate::error::{Error, Result};
use crate::fdsolver::{Grid, SolutionProfile};
use crate::num::real_pow;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WaveKind {
    Cosh,
    Sinh,
}

/// A traveling-wave solution of the constant-coefficient equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TravelingWaveSolution {
    pub n: f64,
    pub sigma: f64,
    pub epsilon: f64,
    /// The phase constant C.
    pub shift: f64,
    pub kind: WaveKind,
}

impl TravelingWaveSolution {
    pub fn new(n: f64, sigma: f64, epsilon: f64, shift: f64, kind: WaveKind) -> Result<Self> {
        if n == 0.0 {
            return Err(Error::BadParameters("n must be nonzero"));
        }
        if sigma == 0.0 || epsilon == 0.0 || sigma / epsilon <= 0.0 {
            return Err(Error::BadParameters(
                "sigma/epsilon must be positive for a real square root",
            ));
        }
        Ok(Self {
            n,
            sigma,
            epsilon,
            shift,
            kind,
        })
    }

    /// The wave profile phi(w).
    pub fn profile(&self, omega: f64) -> Result<f64> {
        let arg = 0.5 * self.n * (self.sigma / self.epsilon).sqrt() * omega + self.shift;
        let amplitude = self.sigma * (self.n + 1.0) * (self.n + 2.0) / 2.0;
        let base = match self.kind {
            WaveKind::Cosh => amplitude / arg.cosh().powi(2),
            WaveKind::Sinh => {
                let sh = arg.sinh();
                if sh == 0.0 {
                    return Err(Error::Singularity { omega });
                }
                -amplitude / sh.powi(2)
            }
        };
        real_pow(base, 1.0 / self.n).ok_or(Error::NegativeBase {
            base,
            exponent: 1.0 / self.n,
        })
    }

    /// The space-time field u(x, t) = phi(x - sigma t).
    pub fn field(&self, x: f64, t: f64) -> Result<f64> {
        self.profile(x - self.sigma * t)
    }
}

/// Materializes the exact constant solution phi = gamma on a grid (the
/// rho = 2 reduction, where the zeroth-order term drops out).
pub fn constant_profile(gamma: f64, grid: &Grid) -> SolutionProfile {
    SolutionProfile {
        grid: grid.clone(),
        phi: vec![gamma; grid.node_count()],
        iterations: 0,
        final_delta: 0.0,
    }
}
