//! Text formats: profile/convergence/field CSV, key=value blocks for
//! equations and reduced IVPs, and JSON mirrors.
//!
//! CSV tables carry values in scientific notation with 17 significant
//! digits; key=value blocks use Rust's shortest round-trip float syntax.
//! Lines starting with '#' and blank lines are ignored when parsing.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fdsolver::SolutionProfile;
use crate::model::{CoefficientFunction, GKdVEquation};
use crate::reconstruct::SpaceTimeField;
use crate::reduce::{Ansatz, GenericOde, ReducedIvp};

/// 17 significant digits, scientific notation.
fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

/// Profile table `omega,phi` followed by the outcome trailer block.
pub fn profile_csv(profile: &SolutionProfile, status: &str) -> String {
    let mut out = String::with_capacity(profile.phi.len() * 48 + 96);
    out.push_str("omega,phi\n");
    for (i, &phi) in profile.phi.iter().enumerate() {
        let _ = writeln!(out, "{},{}", sci(profile.grid.node(i)), sci(phi));
    }
    let _ = writeln!(out, "status={status}");
    let _ = writeln!(out, "iterations={}", profile.iterations);
    let _ = writeln!(out, "final_delta={}", sci(profile.final_delta));
    out
}

/// JSON mirror of the profile CSV.
pub fn profile_json(profile: &SolutionProfile, status: &str) -> Value {
    json!({
        "omega": profile.grid.nodes().collect::<Vec<_>>(),
        "phi": profile.phi,
        "status": status,
        "iterations": profile.iterations,
        "final_delta": profile.final_delta,
    })
}

/// Convergence table `N,abs_error`.
pub fn convergence_csv(table: &[(usize, f64)]) -> String {
    let mut out = String::from("N,abs_error\n");
    for &(n, err) in table {
        let _ = writeln!(out, "{n},{}", sci(err));
    }
    out
}

/// Long-form field table `x,t,u`, row-major over t then x.
pub fn field_csv(field: &SpaceTimeField) -> String {
    let mut out = String::from("x,t,u\n");
    for (it, &t) in field.t_nodes().iter().enumerate() {
        for (ix, &x) in field.x_nodes().iter().enumerate() {
            let _ = writeln!(out, "{},{},{}", sci(x), sci(t), sci(field.value(ix, it)));
        }
    }
    out
}

/// One fence-plot snapshot `x,u` at the time slice `it`.
pub fn slice_csv(field: &SpaceTimeField, it: usize) -> String {
    let mut out = String::from("x,u\n");
    for (ix, &x) in field.x_nodes().iter().enumerate() {
        let _ = writeln!(out, "{},{}", sci(x), sci(field.value(ix, it)));
    }
    out
}

/// Snapshot file name `slice_t=<value>.csv`. The value is rounded to 12
/// decimals so accumulated spacing dust does not leak into file names.
pub fn slice_filename(t: f64) -> String {
    let display = (t * 1e12).round() / 1e12;
    format!("slice_t={display}.csv")
}

/// Coefficient grammar: `zero | const:c | power:lambda,alpha,beta,rho |
/// exp:lambda,k | damping:j`.
pub fn coefficient_to_string(f: &CoefficientFunction) -> String {
    match *f {
        CoefficientFunction::Zero => "zero".to_string(),
        CoefficientFunction::Constant(c) => format!("const:{c}"),
        CoefficientFunction::AffinePower {
            lambda,
            alpha,
            beta,
            rho,
        } => {
            format!("power:{lambda},{alpha},{beta},{rho}")
        }
        CoefficientFunction::Exponential { lambda, k } => format!("exp:{lambda},{k}"),
        CoefficientFunction::PowerLawDamping { j } => format!("damping:{j}"),
    }
}

fn parse_f64(s: &str, what: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| Error::Parse(format!("{what}: not a number: '{s}'")))
}

fn parse_fields(spec: &str, tag: &str, count: usize) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != count {
        return Err(Error::Parse(format!(
            "{tag} form needs {count} comma-separated values, got '{spec}'"
        )));
    }
    parts.iter().map(|p| parse_f64(p, tag)).collect()
}

/// Parses one coefficient description.
pub fn parse_coefficient(text: &str) -> Result<CoefficientFunction> {
    let text = text.trim();
    if text == "zero" {
        return Ok(CoefficientFunction::Zero);
    }
    let (tag, spec) = text
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("coefficient needs 'form:values', got '{text}'")))?;
    match tag {
        "const" => Ok(CoefficientFunction::Constant(parse_f64(spec, "const")?)),
        "power" => {
            let v = parse_fields(spec, "power", 4)?;
            Ok(CoefficientFunction::AffinePower {
                lambda: v[0],
                alpha: v[1],
                beta: v[2],
                rho: v[3],
            })
        }
        "exp" => {
            let v = parse_fields(spec, "exp", 2)?;
            Ok(CoefficientFunction::Exponential {
                lambda: v[0],
                k: v[1],
            })
        }
        "damping" => Ok(CoefficientFunction::PowerLawDamping {
            j: parse_f64(spec, "damping")?,
        }),
        other => Err(Error::Parse(format!("unknown coefficient form '{other}'"))),
    }
}

fn kv_lines(text: &str) -> impl Iterator<Item = (&str, &str)> {
    text.lines().filter_map(|line| {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            return None;
        }
        line.split_once('=').map(|(k, v)| (k.trim(), v.trim()))
    })
}

/// Equation block: `n=...`, `g=...`, `h=...` (h defaults to zero).
pub fn parse_equation(text: &str) -> Result<GKdVEquation> {
    let mut n = None;
    let mut g = None;
    let mut h = CoefficientFunction::Zero;
    for (key, value) in kv_lines(text) {
        match key {
            "n" => n = Some(parse_f64(value, "n")?),
            "g" => g = Some(parse_coefficient(value)?),
            "h" => h = parse_coefficient(value)?,
            other => return Err(Error::Parse(format!("unknown equation key '{other}'"))),
        }
    }
    let n = n.ok_or_else(|| Error::Parse("missing 'n='".into()))?;
    let g = g.ok_or_else(|| Error::Parse("missing 'g='".into()))?;
    GKdVEquation::new(n, g, h)
}

pub fn equation_to_string(eq: &GKdVEquation) -> String {
    format!(
        "n={}\ng={}\nh={}\n",
        eq.n,
        coefficient_to_string(&eq.g),
        coefficient_to_string(&eq.h)
    )
}

fn ansatz_to_string(a: &Ansatz) -> String {
    match *a {
        Ansatz::Power { pu, pw } => format!("power:{pu},{pw}"),
        Ansatz::Exp { ru, rw } => format!("exp:{ru},{rw}"),
        Ansatz::LogShift { pu, shift } => format!("logshift:{pu},{shift}"),
        Ansatz::TravelingWave { sigma } => format!("tw:{sigma}"),
    }
}

fn parse_ansatz(text: &str) -> Result<Ansatz> {
    let (tag, spec) = text
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("ansatz needs 'form:values', got '{text}'")))?;
    match tag {
        "power" => {
            let v = parse_fields(spec, "power ansatz", 2)?;
            Ok(Ansatz::Power { pu: v[0], pw: v[1] })
        }
        "exp" => {
            let v = parse_fields(spec, "exp ansatz", 2)?;
            Ok(Ansatz::Exp { ru: v[0], rw: v[1] })
        }
        "logshift" => {
            let v = parse_fields(spec, "logshift ansatz", 2)?;
            Ok(Ansatz::LogShift {
                pu: v[0],
                shift: v[1],
            })
        }
        "tw" => Ok(Ansatz::TravelingWave {
            sigma: parse_f64(spec, "tw ansatz")?,
        }),
        other => Err(Error::Parse(format!("unknown ansatz form '{other}'"))),
    }
}

/// Reduced-IVP block consumed by the solver and the CLI:
/// `a3= a2= p= m= q= s= r= gamma= a= b=` plus an optional `ansatz=` line.
pub fn reduced_ivp_to_string(ivp: &ReducedIvp) -> String {
    let o = &ivp.ode;
    let mut out = format!(
        "a3={}\na2={}\np={}\nm={}\nq={}\ns={}\nr={}\ngamma={}\na={}\nb={}\n",
        o.a3, o.a2, o.p, o.m, o.q, o.s, o.r, ivp.gamma, ivp.domain.0, ivp.domain.1
    );
    if let Some(ansatz) = &ivp.ansatz {
        let _ = writeln!(out, "ansatz={}", ansatz_to_string(ansatz));
    }
    out
}

pub fn parse_reduced_ivp(text: &str) -> Result<ReducedIvp> {
    let mut vals = [None::<f64>; 10];
    const KEYS: [&str; 10] = ["a3", "a2", "p", "m", "q", "s", "r", "gamma", "a", "b"];
    let mut ansatz = None;
    for (key, value) in kv_lines(text) {
        if key == "ansatz" {
            ansatz = Some(parse_ansatz(value)?);
            continue;
        }
        match KEYS.iter().position(|k| *k == key) {
            Some(i) => vals[i] = Some(parse_f64(value, key)?),
            None => return Err(Error::Parse(format!("unknown IVP key '{key}'"))),
        }
    }
    let get = |i: usize| vals[i].ok_or_else(|| Error::Parse(format!("missing '{}='", KEYS[i])));
    let ode = GenericOde::new(
        get(0)?,
        get(1)?,
        get(2)?,
        get(3)?,
        get(4)?,
        get(5)?,
        get(6)?,
    )?;
    Ok(ReducedIvp {
        ode,
        gamma: get(7)?,
        domain: (get(8)?, get(9)?),
        ansatz,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::constant_profile;
    use crate::fdsolver::Grid;
    use crate::reconstruct::reconstruct;

    #[test]
    fn profile_csv_format() {
        let grid = Grid::new(0.0, 1.0, 8).unwrap();
        let p = constant_profile(0.5, &grid);
        let text = profile_csv(&p, "converged");
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("omega,phi"));
        assert_eq!(
            lines.next(),
            Some("0.0000000000000000e0,5.0000000000000000e-1")
        );
        assert!(text.contains("status=converged"));
        assert!(text.contains("iterations=0"));
        assert!(text.contains("final_delta=0.0000000000000000e0"));
        assert_eq!(text.lines().count(), 1 + 9 + 3);
    }

    #[test]
    fn convergence_csv_format() {
        let text = convergence_csv(&[(100, 1e-3), (200, 5e-4)]);
        assert_eq!(text.lines().next(), Some("N,abs_error"));
        assert!(text.contains("100,1.0000000000000000e-3"));
    }

    #[test]
    fn field_csv_is_t_major() {
        let grid = Grid::new(0.0, 10.0, 16).unwrap();
        let p = constant_profile(2.0, &grid);
        let field = reconstruct(
            &Ansatz::TravelingWave { sigma: 0.0 },
            &p,
            &[0.0, 1.0, 2.0],
            &[0.5, 1.0],
        )
        .unwrap();
        let text = field_csv(&field);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "x,t,u");
        // First block is t = 0.5 over all x.
        assert!(lines[1].starts_with("0.0000000000000000e0,5.0000000000000000e-1,"));
        assert!(lines[2].starts_with("1.0000000000000000e0,5.0000000000000000e-1,"));
        assert!(lines[4].starts_with("0.0000000000000000e0,1.0000000000000000e0,"));

        let slice = slice_csv(&field, 1);
        assert_eq!(slice.lines().next(), Some("x,u"));
        assert_eq!(slice.lines().count(), 4);
        assert_eq!(slice_filename(0.2), "slice_t=0.2.csv");
    }

    #[test]
    fn coefficient_round_trip() {
        let forms = [
            CoefficientFunction::Zero,
            CoefficientFunction::Constant(-1.5),
            CoefficientFunction::AffinePower {
                lambda: 2.0,
                alpha: 1.0,
                beta: 0.25,
                rho: -0.5,
            },
            CoefficientFunction::Exponential {
                lambda: 1.0,
                k: 3.0,
            },
            CoefficientFunction::PowerLawDamping { j: 0.5 },
        ];
        for f in &forms {
            assert_eq!(parse_coefficient(&coefficient_to_string(f)).unwrap(), *f);
        }
        assert!(parse_coefficient("power:1,2").is_err());
        assert!(parse_coefficient("cubic:1").is_err());
    }

    #[test]
    fn equation_block_round_trip() {
        let eq = GKdVEquation::new(
            1.0,
            CoefficientFunction::AffinePower {
                lambda: -1.0,
                alpha: 1.0,
                beta: 0.0,
                rho: 1.0,
            },
            CoefficientFunction::PowerLawDamping { j: 0.5 },
        )
        .unwrap();
        let text = equation_to_string(&eq);
        assert_eq!(parse_equation(&text).unwrap(), eq);

        // h defaults to zero; comments and blanks are skipped.
        let eq2 = parse_equation("# a comment\nn=2\n\ng=const:1\n").unwrap();
        assert_eq!(eq2.h, CoefficientFunction::Zero);
        assert!(parse_equation("g=const:1").is_err());
        assert!(parse_equation("n=1\ng=const:0").is_err());
    }

    #[test]
    fn reduced_ivp_round_trip() {
        let ivp = ReducedIvp {
            ode: GenericOde::new(-1.0, 0.0, 1.0, 1.0, -2.0 / 3.0, 0.0, -1.0 / 3.0).unwrap(),
            gamma: 0.5,
            domain: (0.0, 50.0),
            ansatz: Some(Ansatz::Power {
                pu: -1.0 / 3.0,
                pw: 2.0 / 3.0,
            }),
        };
        let text = reduced_ivp_to_string(&ivp);
        assert_eq!(parse_reduced_ivp(&text).unwrap(), ivp);

        let bare = ReducedIvp {
            ansatz: None,
            ..ivp
        };
        let text = reduced_ivp_to_string(&bare);
        assert!(!text.contains("ansatz"));
        assert_eq!(parse_reduced_ivp(&text).unwrap(), bare);

        assert!(parse_reduced_ivp("a3=1\n").is_err());
    }

    #[test]
    fn profile_json_mirrors_csv() {
        let grid = Grid::new(0.0, 1.0, 8).unwrap();
        let p = constant_profile(0.5, &grid);
        let doc = profile_json(&p, "converged");
        assert_eq!(doc["status"], "converged");
        assert_eq!(doc["phi"].as_array().unwrap().len(), 9);
        assert_eq!(doc["omega"][8], 1.0);
    }
}
