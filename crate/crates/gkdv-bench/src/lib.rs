//! Shared fixtures for the benchmark targets.

use gkdv::{Ansatz, ReducedIvp, ReductionCase};

/// The standard-solution IVP (n = 1, rho = 1, eps = -1, gamma = 0.5).
pub fn standard_ivp() -> ReducedIvp {
    ReducedIvp {
        ode: ReductionCase::PowerLaw {
            n: 1.0,
            rho: 1.0,
            epsilon: -1.0,
        }
        .reduced_ode()
        .expect("valid row"),
        gamma: 0.5,
        domain: (0.0, 50.0),
        ansatz: Some(Ansatz::Power {
            pu: -1.0 / 3.0,
            pw: 2.0 / 3.0,
        }),
    }
}
