//! Lie-symmetry classification of class members.
//!
//! The classifier gauges the damping away, normalizes the dispersion
//! coefficient and pattern-matches the resulting form against the known
//! extension cases. Generators are reported in the gauged, normalized
//! variables. Forms are matched structurally; there is no numerical
//! fitting of sampled coefficient values.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::model::{
    gauge_to_zero_damping, normalize_g, CoefficientFunction, EquivParams, GKdVEquation, GaugeResult,
};

/// A Lie point symmetry generator with affine coefficients:
/// tau = tau_t * t + tau_1, xi = xi_x * x + xi_1, eta = eta_u * u.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Generator {
    pub tau_t: f64,
    pub tau_1: f64,
    pub xi_x: f64,
    pub xi_1: f64,
    pub eta_u: f64,
}

impl Generator {
    pub fn new(tau_t: f64, tau_1: f64, xi_x: f64, xi_1: f64, eta_u: f64) -> Self {
        Self {
            tau_t,
            tau_1,
            xi_x,
            xi_1,
            eta_u,
        }
    }

    /// The space translation admitted by every member of the class.
    pub fn x_translation() -> Self {
        Self::new(0.0, 0.0, 0.0, 1.0, 0.0)
    }

    /// The time translation (constant-g case only).
    pub fn t_translation() -> Self {
        Self::new(0.0, 1.0, 0.0, 0.0, 0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.tau_t == 0.0
            && self.tau_1 == 0.0
            && self.xi_x == 0.0
            && self.xi_1 == 0.0
            && self.eta_u == 0.0
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn scaled(c: f64, var: &str) -> String {
            if c == 1.0 {
                var.to_string()
            } else if c == -1.0 {
                format!("-{var}")
            } else {
                format!("{c} {var}")
            }
        }
        let mut terms: Vec<String> = Vec::new();
        let mut coeff = |scale: f64, lin: f64, var: &str, dep: &str| {
            let expr = match (scale != 0.0, lin != 0.0) {
                (false, false) => return,
                (true, false) => scaled(scale, var),
                (false, true) => {
                    if lin == 1.0 {
                        terms.push(format!("d_{dep}"));
                        return;
                    }
                    format!("{lin}")
                }
                (true, true) => format!("({} + {lin})", scaled(scale, var)),
            };
            terms.push(format!("{expr} d_{dep}"));
        };
        coeff(self.tau_t, self.tau_1, "t", "t");
        coeff(self.xi_x, self.xi_1, "x", "x");
        coeff(self.eta_u, 0.0, "u", "u");
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
        }
    }
}

/// The symmetry-extension case of a class member, after gauging and
/// normalization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SymmetryClass {
    /// Only the kernel algebra <d_x>.
    Kernel,
    /// g = epsilon t^rho.
    PowerG { rho: f64, epsilon: f64 },
    /// g = epsilon e^t.
    ExpG { epsilon: f64 },
    /// g = epsilon.
    ConstG { epsilon: f64 },
}

impl SymmetryClass {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Kernel => "kernel",
            Self::PowerG { .. } => "power",
            Self::ExpG { .. } => "exp",
            Self::ConstG { .. } => "const",
        }
    }
}

/// Identifier of one subalgebra from the optimal systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubalgebraId {
    /// <d_x> (reduces to constants only).
    G1,
    /// <3nt d_t + (rho+1)n x d_x + (rho-2) u d_u>, power case, rho != -1.
    G1_1,
    /// <nt d_t + a d_x - u d_u>, power case with rho = -1.
    G1_2,
    /// <3n d_t + nx d_x + u d_u>, exponential case.
    G2,
    /// <d_t + sigma d_x>, constant case (traveling waves).
    G3_1,
    /// <3nt d_t + nx d_x - 2u d_u>, constant case.
    G3_2,
}

impl SubalgebraId {
    /// Identifier of the reduction case this subalgebra leads to (`None`
    /// for the kernel translation, which only produces constant solutions).
    pub fn reduction_case(&self) -> Option<u32> {
        match self {
            Self::G1 => None,
            Self::G1_1 => Some(1),
            Self::G1_2 => Some(2),
            Self::G2 => Some(3),
            Self::G3_1 => Some(4),
            Self::G3_2 => Some(5),
        }
    }
}

impl fmt::Display for SubalgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::G1 => "g1",
            Self::G1_1 => "g1.1",
            Self::G1_2 => "g1.2",
            Self::G2 => "g2",
            Self::G3_1 => "g3.1",
            Self::G3_2 => "g3.2",
        };
        write!(f, "{s}")
    }
}

/// Full classification outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationReport {
    pub class: SymmetryClass,
    /// Basis of the maximal algebra in gauged/normalized variables.
    pub generators: Vec<Generator>,
    pub gauge: GaugeResult,
    pub normalization: EquivParams,
    pub reduction_menu: Vec<SubalgebraId>,
    pub warnings: Vec<String>,
}

/// Dilatation generator of the power-law extension:
/// 3nt d_t + (rho+1)n x d_x + (rho-2) u d_u.
pub fn power_case_generator(n: f64, rho: f64) -> Generator {
    Generator::new(3.0 * n, 0.0, (rho + 1.0) * n, 0.0, rho - 2.0)
}

/// Generator of the exponential extension: 3n d_t + nx d_x + u d_u.
pub fn exp_case_generator(n: f64) -> Generator {
    Generator::new(0.0, 3.0 * n, n, 0.0, 1.0)
}

/// Dilatation of the constant-g extension: 3nt d_t + nx d_x - 2u d_u.
pub fn const_case_generator(n: f64) -> Generator {
    Generator::new(3.0 * n, 0.0, n, 0.0, -2.0)
}

/// Decides which extension case an equation belongs to and assembles its
/// generators and reduction menu.
pub fn classify(eq: &GKdVEquation) -> Result<ClassificationReport> {
    let gauge = gauge_to_zero_damping(eq)?;
    let mut warnings = Vec::new();
    if eq.n == 1.0 {
        warnings.push(
            "n = 1 admits a wider equivalence group; the classification shown uses the generic-n group"
                .to_string(),
        );
    }

    let (class, generators, normalization, menu) = match normalize_g(&gauge.eq0) {
        Ok((norm, params)) => match norm.g {
            CoefficientFunction::AffinePower { lambda, rho, .. } => {
                let menu = if rho == -1.0 {
                    vec![SubalgebraId::G1, SubalgebraId::G1_2]
                } else {
                    vec![SubalgebraId::G1, SubalgebraId::G1_1]
                };
                (
                    SymmetryClass::PowerG {
                        rho,
                        epsilon: lambda,
                    },
                    vec![
                        Generator::x_translation(),
                        power_case_generator(norm.n, rho),
                    ],
                    params,
                    menu,
                )
            }
            CoefficientFunction::Exponential { lambda, .. } => (
                SymmetryClass::ExpG { epsilon: lambda },
                vec![Generator::x_translation(), exp_case_generator(norm.n)],
                params,
                vec![SubalgebraId::G1, SubalgebraId::G2],
            ),
            CoefficientFunction::Constant(epsilon) => (
                SymmetryClass::ConstG { epsilon },
                vec![
                    Generator::x_translation(),
                    Generator::t_translation(),
                    const_case_generator(norm.n),
                ],
                params,
                vec![SubalgebraId::G1, SubalgebraId::G3_1, SubalgebraId::G3_2],
            ),
            _ => unreachable!("normalize_g only returns the three normal forms"),
        },
        Err(Error::NotNormalizable(reason)) => {
            warnings.push(format!(
                "no extension reachable within the orientation-preserving equivalence subgroup ({reason}); \
                 the equation may still admit an extension under time reversal"
            ));
            (
                SymmetryClass::Kernel,
                vec![Generator::x_translation()],
                EquivParams::identity(),
                vec![SubalgebraId::G1],
            )
        }
        Err(other) => return Err(other),
    };

    Ok(ClassificationReport {
        class,
        generators,
        gauge,
        normalization,
        reduction_menu: menu,
        warnings,
    })
}

/// Symmetry generators of u_t + u^n u_x + (j/t) u + lambda t^{rho(1-nj)-nj} u_xxx = 0
/// in the original (undamped-ungauged) variables: the space translation and
/// Gamma = 3n/(1-nj) t d_t + n(rho+1) x d_x + (rho - 2 - 3nj/(1-nj)) u d_u.
pub fn generators_for_damped_power_law(
    n: f64,
    j: f64,
    rho: f64,
    lambda: f64,
) -> Result<Vec<Generator>> {
    if n == 0.0 {
        return Err(Error::InvalidEquation("n must be nonzero"));
    }
    if lambda == 0.0 {
        return Err(Error::InvalidEquation("lambda must be nonzero"));
    }
    let nj = n * j;
    if nj == 1.0 {
        return Err(Error::NjEqualsOne { n, j });
    }
    let gamma = Generator::new(
        3.0 * n / (1.0 - nj),
        0.0,
        n * (rho + 1.0),
        0.0,
        rho - 2.0 - 3.0 * nj / (1.0 - nj),
    );
    Ok(vec![Generator::x_translation(), gamma])
}

/// Tests whether boundary data q(t) = gamma t^{q_exponent} is left invariant
/// by the dilatation `gen`: true iff q_exponent = eta_u / tau_t.
pub fn check_bc_invariance(gen: &Generator, q_exponent: f64) -> Result<bool> {
    if gen.tau_t == 0.0 || gen.tau_1 != 0.0 || gen.xi_1 != 0.0 {
        return Err(Error::NotDilatation);
    }
    let required = gen.eta_u / gen.tau_t;
    Ok((q_exponent - required).abs() <= 1e-12 * 1.0_f64.max(q_exponent.abs()))
}

/// The invariant boundary exponent of a dilatation generator.
pub fn invariant_boundary_exponent(gen: &Generator) -> Result<f64> {
    if gen.tau_t == 0.0 || gen.tau_1 != 0.0 || gen.xi_1 != 0.0 {
        return Err(Error::NotDilatation);
    }
    Ok(gen.eta_u / gen.tau_t)
}

impl ClassificationReport {
    /// Machine-readable document mirroring the text report.
    pub fn to_json(&self) -> Value {
        let (rho, epsilon) = match self.class {
            SymmetryClass::Kernel => (None, None),
            SymmetryClass::PowerG { rho, epsilon } => (Some(rho), Some(epsilon)),
            SymmetryClass::ExpG { epsilon } => (None, Some(epsilon)),
            SymmetryClass::ConstG { epsilon } => (None, Some(epsilon)),
        };
        json!({
            "class": self.class.name(),
            "rho": rho,
            "epsilon": epsilon,
            "generators": self
                .generators
                .iter()
                .map(|g| {
                    json!({
                        "tau_t": g.tau_t,
                        "tau_1": g.tau_1,
                        "xi_x": g.xi_x,
                        "xi_1": g.xi_1,
                        "eta_u": g.eta_u,
                    })
                })
                .collect::<Vec<_>>(),
            "reduction_menu": self.reduction_menu.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
            "warnings": self.warnings,
        })
    }
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "class: {}", self.class.name())?;
        match self.class {
            SymmetryClass::PowerG { rho, epsilon } => {
                writeln!(f, "normal form: g = {epsilon} t^{rho}")?;
            }
            SymmetryClass::ExpG { epsilon } => writeln!(f, "normal form: g = {epsilon} e^t")?,
            SymmetryClass::ConstG { epsilon } => writeln!(f, "normal form: g = {epsilon}")?,
            SymmetryClass::Kernel => writeln!(f, "normal form: (none)")?,
        }
        writeln!(f, "generators ({}):", self.generators.len())?;
        for g in &self.generators {
            writeln!(f, "  {g}")?;
        }
        writeln!(
            f,
            "reduction menu: {}",
            self.reduction_menu
                .iter()
                .map(|m| m.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        )?;
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        Ok(())
    }
}
