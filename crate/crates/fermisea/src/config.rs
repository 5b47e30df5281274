//! Variational configurations and their canonical JSON form.
//!
//! A configuration fixes the lattice, the occupied dual-lattice points
//! with their weights Phi and boost parameters tau, and the weight
//! normalization mode. The JSON layout is
//!
//! ```json
//! {
//!   "n_t": 8, "n_r": 6,
//!   "mode": "strict",                      // or {"relaxed": 1e-3}
//!   "states": [{"omega": -1, "k": 1, "phi": 1.0, "tau": 0.0}, ...]
//! }
//! ```
//!
//! States may appear in any order on input; in memory and on output
//! they are always held in canonical order, sorted by (k, omega), with
//! pairwise distinct (omega, k). Every float in emitted JSON carries
//! 17 significant digits so that writing and re-parsing is exact.

use crate::error::{Error, Result};
use crate::lattice::LatticeSpec;
use serde::de::Error as _;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Weight normalization mode.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Strict normalization: every occupied weight is exactly 1.
    Strict,
    /// Relaxed normalization: occupied weights only need to exceed
    /// the floor epsilon carried by the variant.
    Relaxed(f64),
}

impl Mode {
    /// The relaxed-mode floor, if any.
    pub fn epsilon(&self) -> Option<f64> {
        match self {
            Mode::Strict => None,
            Mode::Relaxed(eps) => Some(*eps),
        }
    }
}

/// One occupied dual-lattice point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OccupiedState {
    /// Energy index omega in {-(N_t-1), ..., 0}.
    pub omega: i32,
    /// Momentum index k in {1, ..., N_r}.
    pub k: u32,
    /// Weight Phi > 0 (unoccupied points are simply absent).
    pub phi: f64,
    /// Boost parameter tau.
    pub tau: f64,
}

/// A full variational state: lattice, mode, occupied states.
///
/// Instances are always canonical: states sorted by (k, omega),
/// validated against the lattice and mode. All mutating operations go
/// through constructors that re-validate, so an existing value can be
/// trusted everywhere.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Configuration {
    #[serde(flatten)]
    spec: LatticeSpec,
    mode: Mode,
    states: Vec<OccupiedState>,
}

/// Mirror struct for deserialization; validated into `Configuration`.
#[derive(Deserialize)]
struct RawConfiguration {
    n_t: u32,
    n_r: u32,
    mode: Mode,
    states: Vec<OccupiedState>,
}

impl<'de> Deserialize<'de> for Configuration {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        let raw = RawConfiguration::deserialize(deserializer)?;
        let spec = LatticeSpec::new(raw.n_t, raw.n_r).map_err(D::Error::custom)?;
        Configuration::new(spec, raw.mode, raw.states).map_err(D::Error::custom)
    }
}

impl Configuration {
    /// Validated constructor. Sorts states into canonical (k, omega)
    /// order and checks lattice membership, distinctness, and the
    /// weight normalization of `mode`.
    pub fn new(spec: LatticeSpec, mode: Mode, mut states: Vec<OccupiedState>) -> Result<Self> {
        if let Mode::Relaxed(eps) = mode {
            if !(eps > 0.0) || !eps.is_finite() {
                return Err(Error::InvalidMode(format!(
                    "relaxed epsilon must be a positive finite real, got {eps}"
                )));
            }
        }
        states.sort_by_key(|s| (s.k, s.omega));
        for pair in states.windows(2) {
            if (pair[0].omega, pair[0].k) == (pair[1].omega, pair[1].k) {
                return Err(Error::DuplicateState {
                    omega: pair[0].omega,
                    k: pair[0].k,
                });
            }
        }
        for st in &states {
            if !spec.contains_dual(st.omega, st.k) {
                return Err(Error::InvalidState {
                    omega: st.omega,
                    k: st.k,
                    reason: format!(
                        "outside the dual lattice of a {}x{} system",
                        spec.n_t, spec.n_r
                    ),
                });
            }
            if !st.tau.is_finite() || !st.phi.is_finite() {
                return Err(Error::InvalidState {
                    omega: st.omega,
                    k: st.k,
                    reason: "phi and tau must be finite".into(),
                });
            }
            match mode {
                Mode::Strict => {
                    if st.phi != 1.0 {
                        return Err(Error::InvalidState {
                            omega: st.omega,
                            k: st.k,
                            reason: format!(
                                "strict normalization requires phi = 1, got {}",
                                st.phi
                            ),
                        });
                    }
                }
                Mode::Relaxed(eps) => {
                    if st.phi <= eps {
                        return Err(Error::InvalidState {
                            omega: st.omega,
                            k: st.k,
                            reason: format!(
                                "relaxed normalization requires phi > epsilon = {eps}, got {}",
                                st.phi
                            ),
                        });
                    }
                }
            }
        }
        Ok(Self { spec, mode, states })
    }

    /// The lattice dimensions.
    pub fn spec(&self) -> LatticeSpec {
        self.spec
    }

    /// The normalization mode.
    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Occupied states in canonical (k, omega) order.
    pub fn states(&self) -> &[OccupiedState] {
        &self.states
    }

    /// Local trace f_loc = sum of k * Phi over occupied states.
    pub fn local_trace(&self) -> f64 {
        self.states
            .iter()
            .map(|s| f64::from(s.k) * s.phi)
            .sum::<f64>()
    }

    /// Boost parameters in canonical state order.
    pub fn taus(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.tau).collect()
    }

    /// Weights in canonical state order.
    pub fn phis(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.phi).collect()
    }

    /// Same occupation with replaced boost parameters (canonical state
    /// order). Lengths must match.
    pub fn with_taus(&self, taus: &[f64]) -> Result<Self> {
        if taus.len() != self.states.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} tau values, got {}",
                self.states.len(),
                taus.len()
            )));
        }
        let states = self
            .states
            .iter()
            .zip(taus)
            .map(|(s, &tau)| OccupiedState { tau, ..*s })
            .collect();
        Self::new(self.spec, self.mode, states)
    }

    /// Same occupation with replaced weights (canonical state order);
    /// weights are re-validated against the mode.
    pub fn with_phis(&self, phis: &[f64]) -> Result<Self> {
        if phis.len() != self.states.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} phi values, got {}",
                self.states.len(),
                phis.len()
            )));
        }
        let states = self
            .states
            .iter()
            .zip(phis)
            .map(|(s, &phi)| OccupiedState { phi, ..*s })
            .collect();
        Self::new(self.spec, self.mode, states)
    }

    /// Parity transform: global sign flip of every tau.
    pub fn parity_flipped(&self) -> Self {
        let states = self
            .states
            .iter()
            .map(|s| OccupiedState { tau: -s.tau, ..*s })
            .collect();
        Self::new(self.spec, self.mode, states)
            .expect("parity flip preserves validity")
    }

    /// Gauge transform: translate every omega by `shift`, wrapping
    /// periodically back into {-(N_t-1), ..., 0}.
    pub fn gauge_translated(&self, shift: i32) -> Self {
        let states = self
            .states
            .iter()
            .map(|s| OccupiedState {
                omega: self.spec.wrap_omega(s.omega.wrapping_add(shift)),
                ..*s
            })
            .collect();
        Self::new(self.spec, self.mode, states)
            .expect("gauge translation preserves validity")
    }

    /// Serialize to canonical JSON (floats at 17 significant digits).
    pub fn to_json(&self) -> String {
        to_json_string(self)
    }

    /// Parse and validate from JSON text.
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Load a configuration from a JSON file.
    pub fn read_file(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Write canonical JSON to a file.
    pub fn write_file(&self, path: &Path) -> Result<()> {
        Ok(std::fs::write(path, self.to_json())?)
    }
}

/// serde_json formatter printing every float with 17 significant
/// digits, which round-trips any finite f64 exactly.
struct Sig17Formatter;

impl serde_json::ser::Formatter for Sig17Formatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: std::io::Write + ?Sized,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Serialize any value to JSON with 17-significant-digit floats.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Sig17Formatter);
    value
        .serialize(&mut ser)
        .expect("in-memory JSON serialization cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}
