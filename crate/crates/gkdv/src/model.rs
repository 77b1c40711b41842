//! Equations of the class u_t + u^n u_x + h(t) u + g(t) u_xxx = 0 and the
//! closed-form equivalence and gauge transformations acting on them.
//!
//! Coefficients are kept in a closed analytic family (constants, shifted
//! powers, exponentials, j/t damping) so that every transformation used by
//! the classifier can be carried out exactly, without a computer algebra
//! system. All values are immutable; every operation is a pure function.

use crate::error::{Error, Result};
use crate::num::real_pow;

/// One tagged analytic coefficient form for g(t) or h(t).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CoefficientFunction {
    /// Identically zero (only admissible as a damping h).
    Zero,
    /// A nonzero constant c.
    Constant(f64),
    /// lambda * (alpha t + beta)^rho with lambda, alpha, rho nonzero.
    AffinePower {
        lambda: f64,
        alpha: f64,
        beta: f64,
        rho: f64,
    },
    /// lambda * e^{k t} with lambda, k nonzero.
    Exponential { lambda: f64, k: f64 },
    /// j / t with j nonzero (defined for t > 0).
    PowerLawDamping { j: f64 },
}

impl CoefficientFunction {
    /// Evaluates the analytic form at `t`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        match *self {
            Self::Zero => Ok(0.0),
            Self::Constant(c) => Ok(c),
            Self::AffinePower {
                lambda,
                alpha,
                beta,
                rho,
            } => {
                let base = alpha * t + beta;
                if base == 0.0 && rho < 0.0 {
                    return Err(Error::CoefficientDomain {
                        t,
                        reason: "pole of (alpha t + beta)^rho",
                    });
                }
                match real_pow(base, rho) {
                    Some(p) => Ok(lambda * p),
                    None => Err(Error::CoefficientDomain {
                        t,
                        reason: "negative base under a non-integer power",
                    }),
                }
            }
            Self::Exponential { lambda, k } => Ok(lambda * (k * t).exp()),
            Self::PowerLawDamping { j } => {
                if t <= 0.0 {
                    Err(Error::CoefficientDomain {
                        t,
                        reason: "j/t requires t > 0",
                    })
                } else {
                    Ok(j / t)
                }
            }
        }
    }

    /// Structural invariants for use as the dispersion coefficient g.
    pub fn validate_as_g(&self) -> Result<()> {
        let ok = match *self {
            Self::Zero => {
                return Err(Error::InvalidEquation(
                    "g must not vanish (the class requires n g != 0)",
                ))
            }
            Self::Constant(c) => c != 0.0,
            Self::AffinePower {
                lambda, alpha, rho, ..
            } => lambda != 0.0 && alpha != 0.0 && rho != 0.0,
            Self::Exponential { lambda, k } => lambda != 0.0 && k != 0.0,
            Self::PowerLawDamping { j } => j != 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidEquation(
                "coefficient form has a vanishing parameter",
            ))
        }
    }

    /// Structural invariants for use as the damping coefficient h.
    pub fn validate_as_h(&self) -> Result<()> {
        match *self {
            Self::Zero => Ok(()),
            _ => self.validate_as_g(),
        }
    }

    /// Folds removable structure: pure powers absorb `alpha`, `j/t` used as
    /// a dispersion coefficient becomes the power `j t^{-1}`, a zero-exponent
    /// power collapses to a constant. Evaluation is unchanged wherever both
    /// forms are defined.
    pub fn canonical(&self) -> Self {
        match *self {
            Self::AffinePower {
                lambda,
                alpha,
                beta,
                rho,
            } => {
                if rho == 0.0 {
                    Self::Constant(lambda)
                } else if alpha != 1.0 {
                    // lambda (alpha t + beta)^rho = lambda alpha^rho (t + beta/alpha)^rho
                    match real_pow(alpha, rho) {
                        Some(f) => Self::AffinePower {
                            lambda: lambda * f,
                            alpha: 1.0,
                            beta: beta / alpha,
                            rho,
                        },
                        None => *self,
                    }
                } else {
                    *self
                }
            }
            Self::PowerLawDamping { j } => Self::AffinePower {
                lambda: j,
                alpha: 1.0,
                beta: 0.0,
                rho: -1.0,
            },
            other => other,
        }
    }

    /// A fixed antiderivative of the damping form: 0 for zero damping,
    /// c t for a constant and j ln t for j/t.
    pub fn damping_antiderivative(&self, t: f64) -> Result<f64> {
        match *self {
            Self::Zero => Ok(0.0),
            Self::Constant(c) => Ok(c * t),
            Self::PowerLawDamping { j } => {
                if t <= 0.0 {
                    Err(Error::CoefficientDomain {
                        t,
                        reason: "ln t requires t > 0",
                    })
                } else {
                    Ok(j * t.ln())
                }
            }
            _ => Err(Error::UnsupportedDampingForm),
        }
    }
}

/// One member of the class: nonlinearity power n with coefficients g, h.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GKdVEquation {
    pub n: f64,
    pub g: CoefficientFunction,
    pub h: CoefficientFunction,
}

impl GKdVEquation {
    pub fn new(n: f64, g: CoefficientFunction, h: CoefficientFunction) -> Result<Self> {
        if n == 0.0 || !n.is_finite() {
            return Err(Error::InvalidEquation("n must be finite and nonzero"));
        }
        g.validate_as_g()?;
        h.validate_as_h()?;
        Ok(Self { n, g, h })
    }
}

/// The constants of the equivalence group of the h = 0 subclass:
/// t~ = eps1 eps3^{-n} t + eps0, x~ = eps1 x + eps2, u~ = eps3 u.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivParams {
    pub eps0: f64,
    pub eps1: f64,
    pub eps2: f64,
    pub eps3: f64,
}

impl EquivParams {
    pub fn new(eps0: f64, eps1: f64, eps2: f64, eps3: f64) -> Result<Self> {
        if eps1 == 0.0 || eps3 == 0.0 {
            return Err(Error::BadEquivParams("eps1 and eps3 must be nonzero"));
        }
        if ![eps0, eps1, eps2, eps3].iter().all(|e| e.is_finite()) {
            return Err(Error::BadEquivParams("parameters must be finite"));
        }
        Ok(Self {
            eps0,
            eps1,
            eps2,
            eps3,
        })
    }

    pub fn identity() -> Self {
        Self {
            eps0: 0.0,
            eps1: 1.0,
            eps2: 0.0,
            eps3: 1.0,
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Composition for the group law: applying `self` first and `then`
    /// second equals applying the returned parameters once. The slope of
    /// the time component depends on n, hence the extra argument.
    pub fn compose(&self, then: &EquivParams, n: f64) -> Result<EquivParams> {
        let a_then = then.eps1
            * real_pow(then.eps3, -n).ok_or(Error::NegativeBase {
                base: then.eps3,
                exponent: -n,
            })?;
        EquivParams::new(
            a_then * self.eps0 + then.eps0,
            then.eps1 * self.eps1,
            then.eps1 * self.eps2 + then.eps2,
            then.eps3 * self.eps3,
        )
    }
}

/// The closed-form time substitutions produced by gauging h to zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TimeMap {
    Identity,
    /// t~ = (1 - e^{-n c t}) / (n c), fixed so that t~(0) = 0.
    Exp {
        n: f64,
        c: f64,
    },
    /// t~ = t^{1-nj} / (1-nj) on t > 0.
    Power {
        n: f64,
        j: f64,
    },
    /// t~ = a t + b.
    Affine {
        a: f64,
        b: f64,
    },
}

impl TimeMap {
    /// Forward map t -> t~.
    pub fn apply(&self, t: f64) -> Result<f64> {
        match *self {
            Self::Identity => Ok(t),
            Self::Exp { n, c } => {
                let nc = n * c;
                Ok((1.0 - (-nc * t).exp()) / nc)
            }
            Self::Power { n, j } => {
                if t <= 0.0 {
                    return Err(Error::CoefficientDomain {
                        t,
                        reason: "power time map requires t > 0",
                    });
                }
                let s = 1.0 - n * j;
                Ok(t.powf(s) / s)
            }
            Self::Affine { a, b } => Ok(a * t + b),
        }
    }

    /// Closed-form inverse t~ -> t, accurate to machine precision.
    pub fn invert(&self, t_tilde: f64) -> Result<f64> {
        match *self {
            Self::Identity => Ok(t_tilde),
            Self::Exp { n, c } => {
                let nc = n * c;
                let arg = 1.0 - nc * t_tilde;
                if arg <= 0.0 {
                    return Err(Error::TimeMapRange { t_tilde });
                }
                Ok(-arg.ln() / nc)
            }
            Self::Power { n, j } => {
                let s = 1.0 - n * j;
                let arg = s * t_tilde;
                if arg <= 0.0 {
                    return Err(Error::TimeMapRange { t_tilde });
                }
                Ok(arg.powf(1.0 / s))
            }
            Self::Affine { a, b } => {
                if a == 0.0 {
                    return Err(Error::TimeMapRange { t_tilde });
                }
                Ok((t_tilde - b) / a)
            }
        }
    }
}

/// The amplitude factor mu(t) = e^{int h dt} of the gauge map u~ = mu u.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum UScale {
    Identity,
    /// e^{c t}
    Exp {
        c: f64,
    },
    /// t^j
    Power {
        j: f64,
    },
}

impl UScale {
    pub fn eval(&self, t: f64) -> Result<f64> {
        match *self {
            Self::Identity => Ok(1.0),
            Self::Exp { c } => Ok((c * t).exp()),
            Self::Power { j } => {
                if t <= 0.0 {
                    Err(Error::CoefficientDomain {
                        t,
                        reason: "t^j scale requires t > 0",
                    })
                } else {
                    Ok(t.powf(j))
                }
            }
        }
    }
}

/// Outcome of gauging the damping away: the equivalent equation with
/// h = 0, together with the substitutions that realize it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugeResult {
    pub eq0: GKdVEquation,
    pub time_map: TimeMap,
    pub u_scale: UScale,
}

/// Gauges h to zero: t~ = int e^{-n int h} dt, u~ = e^{int h} u, leaving
/// g~(t~) = e^{n int h(t) dt} g(t) expressed through the inverse time map.
///
/// Supported damping forms are zero, a constant and j/t; the dispersion
/// coefficient must be such that g~ stays inside the closed family.
pub fn gauge_to_zero_damping(eq: &GKdVEquation) -> Result<GaugeResult> {
    eq.g.validate_as_g()?;
    eq.h.validate_as_h()?;
    match eq.h {
        CoefficientFunction::Zero => Ok(GaugeResult {
            eq0: *eq,
            time_map: TimeMap::Identity,
            u_scale: UScale::Identity,
        }),
        CoefficientFunction::Constant(c) => {
            let nc = eq.n * c;
            // e^{n int h} = e^{nc t} = (1 - nc t~)^{-1} along the map.
            let g_new = match eq.g {
                CoefficientFunction::Constant(cg) => CoefficientFunction::AffinePower {
                    lambda: cg,
                    alpha: -nc,
                    beta: 1.0,
                    rho: -1.0,
                },
                CoefficientFunction::Exponential { lambda, k } => {
                    // lambda e^{(k + nc) t} = lambda (1 - nc t~)^{-(k+nc)/nc}
                    let rho = -(k + nc) / nc;
                    if rho == 0.0 {
                        CoefficientFunction::Constant(lambda)
                    } else {
                        CoefficientFunction::AffinePower {
                            lambda,
                            alpha: -nc,
                            beta: 1.0,
                            rho,
                        }
                    }
                }
                _ => {
                    return Err(Error::UnrepresentableGauge(
                        "constant damping combines with power-law g into a log-power product",
                    ))
                }
            };
            Ok(GaugeResult {
                eq0: GKdVEquation {
                    n: eq.n,
                    g: g_new,
                    h: CoefficientFunction::Zero,
                },
                time_map: TimeMap::Exp { n: eq.n, c },
                u_scale: UScale::Exp { c },
            })
        }
        CoefficientFunction::PowerLawDamping { j } => {
            let nj = eq.n * j;
            if nj == 1.0 {
                return Err(Error::NjEqualsOne { n: eq.n, j });
            }
            // Need g in pure power form lambda t^rho_g.
            let (lam, rho_g) = match eq.g.canonical() {
                CoefficientFunction::Constant(cg) => (cg, 0.0),
                CoefficientFunction::AffinePower {
                    lambda,
                    alpha,
                    beta,
                    rho,
                } if beta == 0.0 && alpha == 1.0 => (lambda, rho),
                _ => {
                    return Err(Error::UnrepresentableGauge(
                        "j/t damping requires a pure power (or constant) g",
                    ))
                }
            };
            // g~(t~) = lam t^{rho_g + nj} = lam (s t~)^{(rho_g + nj)/s}, s = 1 - nj.
            let s = 1.0 - nj;
            let rho_t = (rho_g + nj) / s;
            let g_new = if rho_t == 0.0 {
                CoefficientFunction::Constant(lam)
            } else {
                CoefficientFunction::AffinePower {
                    lambda: lam,
                    alpha: s,
                    beta: 0.0,
                    rho: rho_t,
                }
            };
            Ok(GaugeResult {
                eq0: GKdVEquation {
                    n: eq.n,
                    g: g_new,
                    h: CoefficientFunction::Zero,
                },
                time_map: TimeMap::Power { n: eq.n, j },
                u_scale: UScale::Power { j },
            })
        }
        _ => Err(Error::UnsupportedDampingForm),
    }
}

/// Applies one equivalence transformation of the h = 0 subclass:
/// g~(t~) = eps1^2 eps3^n g((t~ - eps0) eps3^n / eps1), n unchanged.
///
/// Shift and scale preserve every member of the closed family, so the
/// result is always representable.
pub fn apply_scaling_equivalence(eq0: &GKdVEquation, p: &EquivParams) -> Result<GKdVEquation> {
    if eq0.h != CoefficientFunction::Zero {
        return Err(Error::UnsupportedClass(
            "equivalence transformations act on gauged equations (h = 0)",
        ));
    }
    if p.eps1 == 0.0 || p.eps3 == 0.0 {
        return Err(Error::BadEquivParams("eps1 and eps3 must be nonzero"));
    }
    let n = eq0.n;
    let e3n = real_pow(p.eps3, n).ok_or(Error::NegativeBase {
        base: p.eps3,
        exponent: n,
    })?;
    let amp = p.eps1 * p.eps1 * e3n;
    // t = (t~ - eps0) e3n / eps1 substituted into each closed form.
    let g_new = match eq0.g.canonical() {
        CoefficientFunction::Constant(c) => CoefficientFunction::Constant(amp * c),
        CoefficientFunction::AffinePower {
            lambda,
            alpha,
            beta,
            rho,
        } => CoefficientFunction::AffinePower {
            lambda: amp * lambda,
            alpha: alpha * e3n / p.eps1,
            beta: beta - alpha * p.eps0 * e3n / p.eps1,
            rho,
        }
        .canonical(),
        CoefficientFunction::Exponential { lambda, k } => CoefficientFunction::Exponential {
            lambda: amp * lambda * (-k * p.eps0 * e3n / p.eps1).exp(),
            k: k * e3n / p.eps1,
        },
        CoefficientFunction::Zero | CoefficientFunction::PowerLawDamping { .. } => {
            unreachable!("validated g is never zero, and canonical() rewrites j/t")
        }
    };
    Ok(GKdVEquation {
        n,
        g: g_new,
        h: CoefficientFunction::Zero,
    })
}

/// Brings g to a Table-1 normal form: Constant(+-1), lambda t^rho with
/// lambda = +-1, or +-e^t, and returns the parameters realizing it.
///
/// The one-parameter freedom of the group is pinned as follows: powers
/// with rho != 2 scale through eps1, rho = 2 through eps3, constants
/// through eps3, exponentials through eps1 with eps0 absorbing the
/// amplitude. eps1 keeps the sign of the time direction wherever the form
/// allows it; exponentials with k < 0 would need a time reversal and are
/// rejected.
pub fn normalize_g(eq0: &GKdVEquation) -> Result<(GKdVEquation, EquivParams)> {
    if eq0.h != CoefficientFunction::Zero {
        return Err(Error::UnsupportedClass(
            "normalization acts on gauged equations (h = 0)",
        ));
    }
    let n = eq0.n;
    let (g_norm, params) = match eq0.g.canonical() {
        CoefficientFunction::Constant(c) => {
            let eps3 = c.abs().powf(-1.0 / n);
            (
                CoefficientFunction::Constant(c.signum()),
                EquivParams::new(0.0, 1.0, 0.0, eps3)?,
            )
        }
        CoefficientFunction::AffinePower {
            lambda,
            alpha,
            beta,
            rho,
        } => {
            if alpha != 1.0 {
                // canonical() could not fold alpha: negative with a
                // non-integer exponent.
                return Err(Error::NotNormalizable(
                    "decreasing affine argument with non-integer exponent needs a time reversal",
                ));
            }
            if rho == 2.0 {
                let eps3 = lambda.abs().powf(-1.0 / (3.0 * n));
                let e3n = eps3.powf(n);
                let eps0 = beta / e3n;
                (
                    CoefficientFunction::AffinePower {
                        lambda: lambda.signum(),
                        alpha: 1.0,
                        beta: 0.0,
                        rho,
                    },
                    EquivParams::new(eps0, 1.0, 0.0, eps3)?,
                )
            } else {
                let eps1 = lambda.abs().powf(-1.0 / (2.0 - rho));
                (
                    CoefficientFunction::AffinePower {
                        lambda: lambda.signum(),
                        alpha: 1.0,
                        beta: 0.0,
                        rho,
                    },
                    EquivParams::new(beta * eps1, eps1, 0.0, 1.0)?,
                )
            }
        }
        CoefficientFunction::Exponential { lambda, k } => {
            if k < 0.0 {
                return Err(Error::NotNormalizable(
                    "exponential g with negative rate needs a time reversal",
                ));
            }
            let eps0 = (k * k * lambda.abs()).ln();
            (
                CoefficientFunction::Exponential {
                    lambda: lambda.signum(),
                    k: 1.0,
                },
                EquivParams::new(eps0, k, 0.0, 1.0)?,
            )
        }
        CoefficientFunction::Zero | CoefficientFunction::PowerLawDamping { .. } => {
            return Err(Error::InvalidEquation(
                "g must be a nonzero member of the closed family",
            ));
        }
    };
    Ok((
        GKdVEquation {
            n,
            g: g_norm,
            h: CoefficientFunction::Zero,
        },
        params,
    ))
}
