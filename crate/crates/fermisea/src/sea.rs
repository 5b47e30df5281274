//! Discretized Dirac-sea configurations.
//!
//! For a mass parameter m, the sea occupies, for every dual-lattice
//! energy index omega <= -m, the unique momentum index k with
//!
//! ```text
//! 0 <= k - sqrt(omega^2 - m^2) < 1
//! ```
//!
//! i.e. the smallest lattice momentum on or above the mass shell.
//! Energy indices with no admissible k in {1..N_r} (either the shell
//! radius rounds to k = 0, or it exceeds N_r on a lattice with
//! N_r < N_t) are skipped and reported, never silently dropped.

use crate::config::{Configuration, Mode, OccupiedState};
use crate::error::{Error, Result};
use crate::lattice::LatticeSpec;

/// Parameters of a discretized Dirac sea.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeaParams {
    /// Mass parameter m.
    pub mass: f64,
    /// Target lattice.
    pub spec: LatticeSpec,
}

impl SeaParams {
    /// Validate 0 < mass < N_t - 1, so at least one omega <= -m exists
    /// on the dual lattice.
    pub fn new(mass: f64, spec: LatticeSpec) -> Result<Self> {
        if !mass.is_finite() || !(mass > 0.0) || !(mass < f64::from(spec.n_t - 1)) {
            return Err(Error::InvalidArgument(format!(
                "mass must satisfy 0 < m < N_t - 1 = {}, got {mass}",
                spec.n_t.saturating_sub(1)
            )));
        }
        Ok(Self { mass, spec })
    }
}

/// Does (omega, k) sit in the sea shell for mass m, i.e.
/// 0 <= k - sqrt(omega^2 - m^2) < 1 with omega <= -m?
pub fn satisfies_sea_inequality(omega: i32, k: u32, mass: f64) -> bool {
    let omega = f64::from(omega);
    if !(omega <= -mass) {
        return false;
    }
    let shell = (omega * omega - mass * mass).sqrt();
    let slack = f64::from(k) - shell;
    (0.0..1.0).contains(&slack)
}

/// A generated sea plus the energy indices that had to be skipped.
#[derive(Clone, Debug, PartialEq)]
pub struct DiracSea {
    /// The sea configuration (strict mode, Phi = 1, tau = 0).
    pub config: Configuration,
    /// Energy indices omega <= -m with no admissible momentum in
    /// {1..N_r}, in ascending omega order.
    pub skipped: Vec<i32>,
}

/// Build the discretized Dirac sea for the given parameters.
///
/// Errors with an explicit empty-sea condition if no energy index
/// admits a momentum (rather than returning a vacuous configuration).
pub fn dirac_sea_config(params: SeaParams) -> Result<DiracSea> {
    let SeaParams { mass, spec } = params;
    let mut states: Vec<OccupiedState> = Vec::new();
    let mut skipped: Vec<i32> = Vec::new();
    for omega in -(spec.n_t as i32 - 1)..=0 {
        if !(f64::from(omega) <= -mass) {
            continue;
        }
        // The unique k with 0 <= k - shell < 1 is ceil(shell); it only
        // fails to exist when it falls outside {1..N_r}.
        let shell = (f64::from(omega).powi(2) - mass * mass).sqrt();
        let k = shell.ceil();
        if k < 1.0 || k > f64::from(spec.n_r) {
            skipped.push(omega);
            continue;
        }
        let k = k as u32;
        debug_assert!(satisfies_sea_inequality(omega, k, mass));
        states.push(OccupiedState {
            omega,
            k,
            phi: 1.0,
            tau: 0.0,
        });
    }
    if states.is_empty() {
        return Err(Error::EmptySea {
            mass,
            n_t: spec.n_t,
            n_r: spec.n_r,
        });
    }
    let config = Configuration::new(spec, Mode::Strict, states)?;
    // Defensive re-check of the defining inequality on the canonical
    // output.
    for st in config.states() {
        if !satisfies_sea_inequality(st.omega, st.k, mass) {
            return Err(Error::Infeasible(format!(
                "sea state (omega = {}, k = {}) violates the shell inequality",
                st.omega, st.k
            )));
        }
    }
    Ok(DiracSea { config, skipped })
}
