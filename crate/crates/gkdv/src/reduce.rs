//! Similarity ansatzes and the reduction of initial-and-boundary-value
//! problems to third-order ODE initial value problems.
//!
//! Every reduced equation is stored in the generic form
//! a3 phi''' + a2 phi'' + (p phi^m + q w + s) phi' + r phi = 0,
//! which covers all similarity reductions of the class as well as the
//! external benchmark problem.

use crate::classify::{
    check_bc_invariance, generators_for_damped_power_law, invariant_boundary_exponent,
    power_case_generator, Generator,
};
use crate::error::{Error, Result};
use crate::model::{CoefficientFunction, GKdVEquation};
use crate::num::real_pow;

/// A similarity substitution u = A(t) phi(w), w = W(x, t).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Ansatz {
    /// u = t^pu phi(w), w = x t^{-pw} (requires t > 0).
    Power { pu: f64, pw: f64 },
    /// u = e^{ru t} phi(w), w = x e^{-rw t}.
    Exp { ru: f64, rw: f64 },
    /// u = t^pu phi(w), w = x - shift ln t (requires t > 0).
    LogShift { pu: f64, shift: f64 },
    /// u = phi(x - sigma t).
    TravelingWave { sigma: f64 },
}

impl Ansatz {
    /// Maps a space-time point to (w, amplitude) with u = amplitude * phi(w).
    pub fn map(&self, x: f64, t: f64) -> Result<(f64, f64)> {
        match *self {
            Self::Power { pu, pw } => {
                if t <= 0.0 {
                    return Err(Error::BadTimeDomain { t });
                }
                Ok((x * t.powf(-pw), t.powf(pu)))
            }
            Self::Exp { ru, rw } => Ok((x * (-rw * t).exp(), (ru * t).exp())),
            Self::LogShift { pu, shift } => {
                if t <= 0.0 {
                    return Err(Error::BadTimeDomain { t });
                }
                Ok((x - shift * t.ln(), t.powf(pu)))
            }
            Self::TravelingWave { sigma } => Ok((x - sigma * t, 1.0)),
        }
    }
}

/// The generic reduced ODE a3 phi''' + a2 phi'' + (p phi^m + q w + s) phi' + r phi = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenericOde {
    pub a3: f64,
    pub a2: f64,
    pub p: f64,
    pub m: f64,
    pub q: f64,
    pub s: f64,
    pub r: f64,
}

impl GenericOde {
    pub fn new(a3: f64, a2: f64, p: f64, m: f64, q: f64, s: f64, r: f64) -> Result<Self> {
        let ode = Self {
            a3,
            a2,
            p,
            m,
            q,
            s,
            r,
        };
        ode.validate()?;
        Ok(ode)
    }

    pub fn validate(&self) -> Result<()> {
        if self.a3 == 0.0 || !self.a3.is_finite() {
            return Err(Error::BadParameters("a3 must be finite and nonzero"));
        }
        if self.p != 0.0 && self.m == 0.0 {
            return Err(Error::BadParameters("m must be nonzero when p is nonzero"));
        }
        Ok(())
    }

    /// The coefficient of phi' at state (w, phi): p phi^m + q w + s.
    pub fn advection(&self, omega: f64, phi: f64) -> Result<f64> {
        let nonlinear = if self.p == 0.0 {
            0.0
        } else {
            self.p
                * real_pow(phi, self.m).ok_or(Error::NegativeBase {
                    base: phi,
                    exponent: self.m,
                })?
        };
        Ok(nonlinear + self.q * omega + self.s)
    }

    /// phi''' isolated from the ODE:
    /// phi''' = -(a2 phi'' + (p phi^m + q w + s) phi' + r phi) / a3.
    pub fn third_derivative(&self, omega: f64, phi: f64, dphi: f64, d2phi: f64) -> Result<f64> {
        Ok(-(self.a2 * d2phi + self.advection(omega, phi)? * dphi + self.r * phi) / self.a3)
    }
}

/// A reduced initial value problem: the generic ODE with data
/// phi(a) = gamma, phi'(a) = phi''(a) = 0 on [a, b], plus the ansatz used
/// to map a solved profile back to u(x, t) (absent for external benchmark
/// problems, which are solved for validation only).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedIvp {
    pub ode: GenericOde,
    pub gamma: f64,
    pub domain: (f64, f64),
    pub ansatz: Option<Ansatz>,
}

/// One similarity-reduction case of the gauged class, numbered 1..=5.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReductionCase {
    /// Case 1: g = eps t^rho, dilatation reduction.
    PowerLaw { n: f64, rho: f64, epsilon: f64 },
    /// Case 2: g = eps / t, log-shifted reduction with parameter a.
    InverseTime { n: f64, epsilon: f64, a: f64 },
    /// Case 3: g = eps e^t.
    ExponentialG { n: f64, epsilon: f64 },
    /// Case 4: g = eps, traveling wave of speed sigma.
    TravelingWave { n: f64, epsilon: f64, sigma: f64 },
    /// Case 5: g = eps, dilatation reduction.
    ConstantG { n: f64, epsilon: f64 },
}

/// Grab-bag of case parameters for constructing a reduction by number.
#[derive(Debug, Clone, Copy)]
pub struct ReductionParams {
    pub n: f64,
    pub rho: f64,
    pub epsilon: f64,
    pub a: f64,
    pub sigma: f64,
}

impl Default for ReductionParams {
    fn default() -> Self {
        Self {
            n: 1.0,
            rho: 1.0,
            epsilon: -1.0,
            a: 0.0,
            sigma: 1.0,
        }
    }
}

impl ReductionCase {
    pub fn from_id(id: u32, params: &ReductionParams) -> Result<Self> {
        let &ReductionParams {
            n,
            rho,
            epsilon,
            a,
            sigma,
        } = params;
        match id {
            1 => Ok(Self::PowerLaw { n, rho, epsilon }),
            2 => Ok(Self::InverseTime { n, epsilon, a }),
            3 => Ok(Self::ExponentialG { n, epsilon }),
            4 => Ok(Self::TravelingWave { n, epsilon, sigma }),
            5 => Ok(Self::ConstantG { n, epsilon }),
            id => Err(Error::UnknownCase { id }),
        }
    }

    pub fn id(&self) -> u32 {
        match self {
            Self::PowerLaw { .. } => 1,
            Self::InverseTime { .. } => 2,
            Self::ExponentialG { .. } => 3,
            Self::TravelingWave { .. } => 4,
            Self::ConstantG { .. } => 5,
        }
    }

    /// The reduced ODE of this case in generic form.
    pub fn reduced_ode(&self) -> Result<GenericOde> {
        match *self {
            Self::PowerLaw { n, rho, epsilon } => GenericOde::new(
                epsilon,
                0.0,
                1.0,
                n,
                -(rho + 1.0) / 3.0,
                0.0,
                (rho - 2.0) / (3.0 * n),
            ),
            Self::InverseTime { n, epsilon, a } => {
                GenericOde::new(epsilon, 0.0, 1.0, n, 0.0, -a / n, -1.0 / n)
            }
            Self::ExponentialG { n, epsilon } => {
                GenericOde::new(epsilon, 0.0, 1.0, n, -1.0 / 3.0, 0.0, 1.0 / (3.0 * n))
            }
            Self::TravelingWave { n, epsilon, sigma } => {
                GenericOde::new(epsilon, 0.0, 1.0, n, 0.0, -sigma, 0.0)
            }
            Self::ConstantG { n, epsilon } => {
                GenericOde::new(epsilon, 0.0, 1.0, n, -1.0 / 3.0, 0.0, -2.0 / (3.0 * n))
            }
        }
    }
}

/// Builds the similarity ansatz of a generator by solving its
/// characteristic system dt/tau = dx/xi = du/eta.
///
/// Four shapes are supported: dilatations (power type), dilatations whose
/// space part is a pure translation (log shift), time translations with
/// space scaling (exponential type) and pure space-time translations
/// (traveling waves).
pub fn build_ansatz(gen: &Generator) -> Result<Ansatz> {
    if gen.tau_t != 0.0 && gen.tau_1 == 0.0 {
        if gen.xi_1 == 0.0 {
            return Ok(Ansatz::Power {
                pu: gen.eta_u / gen.tau_t,
                pw: gen.xi_x / gen.tau_t,
            });
        }
        if gen.xi_x == 0.0 {
            return Ok(Ansatz::LogShift {
                pu: gen.eta_u / gen.tau_t,
                shift: gen.xi_1 / gen.tau_t,
            });
        }
        return Err(Error::UnsupportedGenerator);
    }
    if gen.tau_t == 0.0 && gen.tau_1 != 0.0 {
        if gen.xi_x == 0.0 && gen.eta_u == 0.0 {
            return Ok(Ansatz::TravelingWave {
                sigma: gen.xi_1 / gen.tau_1,
            });
        }
        if gen.xi_x != 0.0 && gen.xi_1 == 0.0 {
            return Ok(Ansatz::Exp {
                ru: gen.eta_u / gen.tau_1,
                rw: gen.xi_x / gen.tau_1,
            });
        }
        return Err(Error::UnsupportedGenerator);
    }
    Err(Error::UnsupportedGenerator)
}

/// Coefficients of the damped power-law reduction for
/// u_t + u^n u_x + (j/t) u + lambda t^{rho(1-nj)-nj} u_xxx = 0:
/// lambda phi''' + phi^n phi' + (rho+1)(nj-1)/3 w phi' + (rho-2)(1-nj)/(3n) phi = 0.
///
/// At j = 0 this coincides with the row-1 reduction field by field.
pub fn damped_power_law_ode(n: f64, j: f64, rho: f64, lambda: f64) -> Result<GenericOde> {
    let nj = n * j;
    if nj == 1.0 {
        return Err(Error::NjEqualsOne { n, j });
    }
    GenericOde::new(
        lambda,
        0.0,
        1.0,
        n,
        (rho + 1.0) * (nj - 1.0) / 3.0,
        0.0,
        (rho - 2.0) * (1.0 - nj) / (3.0 * n),
    )
}

/// The ansatz of the damped power-law reduction:
/// u = t^{(rho(1-nj)-nj-2)/(3n)} phi(w), w = x t^{(rho+1)(nj-1)/3}.
pub fn damped_power_law_ansatz(n: f64, j: f64, rho: f64) -> Result<Ansatz> {
    let nj = n * j;
    if nj == 1.0 {
        return Err(Error::NjEqualsOne { n, j });
    }
    Ok(Ansatz::Power {
        pu: (rho * (1.0 - nj) - nj - 2.0) / (3.0 * n),
        pw: (rho + 1.0) * (1.0 - nj) / 3.0,
    })
}

/// Reduces an initial-and-boundary-value problem with boundary datum
/// q(t) = gamma t^{q_exponent} at x = 0 to a third-order IVP.
///
/// The equation must be of dilatation-invariant type: either h = 0 with a
/// normalized pure power (or constant) g, or h = j/t with a pure power g.
/// The boundary exponent must match the invariant exponent of the
/// dilatation generator.
pub fn reduce_ibvp(
    eq: &GKdVEquation,
    gamma: f64,
    q_exponent: f64,
    domain: (f64, f64),
) -> Result<ReducedIvp> {
    if gamma == 0.0 {
        return Err(Error::ZeroGamma);
    }
    let (a, b) = domain;
    if a != 0.0 || b <= a {
        return Err(Error::BadDomain { a, b });
    }
    let n = eq.n;
    let (generator, ode, ansatz) = match (eq.h, eq.g.canonical()) {
        (CoefficientFunction::Zero, g) => {
            let (epsilon, rho) = match g {
                CoefficientFunction::AffinePower {
                    lambda,
                    alpha,
                    beta,
                    rho,
                } if alpha == 1.0 && beta == 0.0 && (lambda == 1.0 || lambda == -1.0) => {
                    (lambda, rho)
                }
                // Constant g is the rho = 0 specialization of the same
                // dilatation reduction.
                CoefficientFunction::Constant(c) if c == 1.0 || c == -1.0 => (c, 0.0),
                _ => {
                    return Err(Error::UnsupportedClass(
                        "h = 0 reductions need g = +-t^rho or +-1; apply normalize_g first",
                    ))
                }
            };
            let gen = power_case_generator(n, rho);
            let ode = ReductionCase::PowerLaw { n, rho, epsilon }.reduced_ode()?;
            let ansatz = Ansatz::Power {
                pu: (rho - 2.0) / (3.0 * n),
                pw: (rho + 1.0) / 3.0,
            };
            (gen, ode, ansatz)
        }
        (CoefficientFunction::PowerLawDamping { j }, g) => {
            let (lambda, g_exponent) = match g {
                CoefficientFunction::AffinePower {
                    lambda,
                    alpha,
                    beta,
                    rho,
                } if alpha == 1.0 && beta == 0.0 => (lambda, rho),
                CoefficientFunction::Constant(c) => (c, 0.0),
                _ => {
                    return Err(Error::UnsupportedClass(
                        "j/t damping reductions need a pure power (or constant) g",
                    ))
                }
            };
            let nj = n * j;
            if nj == 1.0 {
                return Err(Error::NjEqualsOne { n, j });
            }
            // The g exponent of the reducible family is rho(1-nj) - nj.
            let rho = (g_exponent + nj) / (1.0 - nj);
            let gen = generators_for_damped_power_law(n, j, rho, lambda)?[1];
            let ode = damped_power_law_ode(n, j, rho, lambda)?;
            let ansatz = damped_power_law_ansatz(n, j, rho)?;
            (gen, ode, ansatz)
        }
        _ => return Err(Error::UnsupportedClass("damping must be zero or j/t")),
    };
    if !check_bc_invariance(&generator, q_exponent)? {
        return Err(Error::IncompatibleBoundaryExponent {
            required: invariant_boundary_exponent(&generator)?,
            found: q_exponent,
        });
    }
    Ok(ReducedIvp {
        ode,
        gamma,
        domain,
        ansatz: Some(ansatz),
    })
}

/// The third-order benchmark IVP from the generalized Burgers-KdV
/// literature: beta F''' - F'' - alpha n F^{n-1} F' + w/2 F' + F/(2n-2) = 0
/// with F(a) = gamma, F'(a) = F''(a) = 0. Validation only: no ansatz.
pub fn helal_benchmark(
    n: f64,
    alpha: f64,
    beta: f64,
    gamma: f64,
    domain: (f64, f64),
) -> Result<ReducedIvp> {
    if n == 1.0 {
        return Err(Error::BadParameters(
            "n = 1 makes the coefficient 1/(2n-2) undefined",
        ));
    }
    if beta == 0.0 {
        return Err(Error::BadParameters("beta must be nonzero"));
    }
    if domain.1 <= domain.0 {
        return Err(Error::BadParameters("domain must have a < b"));
    }
    let ode = GenericOde::new(
        beta,
        -1.0,
        -alpha * n,
        n - 1.0,
        0.5,
        0.0,
        1.0 / (2.0 * n - 2.0),
    )?;
    Ok(ReducedIvp {
        ode,
        gamma,
        domain,
        ansatz: None,
    })
}
