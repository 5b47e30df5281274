//! Error type shared across the crate.
//!
//! Errors fall into two families, reflected in [`Error::exit_code`]:
//! constraint/feasibility failures (exit code 1) and malformed input
//! (exit code 2). Internal-consistency failures (a discriminant that
//! stops being real) are grouped with the first family: they abort a
//! run that was syntactically well-formed.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Lattice dimensions must both be at least 1.
    #[error("invalid lattice: n_t = {n_t}, n_r = {n_r} (both dimensions must be >= 1)")]
    InvalidLattice { n_t: u32, n_r: u32 },

    /// An occupied state lies outside the dual lattice or violates the
    /// weight normalization of the configuration's mode.
    #[error("invalid state (omega = {omega}, k = {k}): {reason}")]
    InvalidState {
        omega: i32,
        k: u32,
        reason: String,
    },

    /// Two states share the same dual-lattice point.
    #[error("duplicate dual-lattice point (omega = {omega}, k = {k})")]
    DuplicateState { omega: i32, k: u32 },

    /// A mode parameter is out of range (e.g. relaxed epsilon <= 0).
    #[error("invalid mode: {0}")]
    InvalidMode(String),

    /// A numeric or index argument violates its documented range.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The discriminant acquired an imaginary part beyond tolerance.
    /// The discriminant of a closed chain is real by construction, so
    /// this indicates an algebra defect rather than bad input.
    #[error(
        "discriminant has non-real residue {residue:e} exceeding tolerance {tolerance:e}; \
         the closed-chain algebra is inconsistent"
    )]
    NonRealDiscriminant { residue: f64, tolerance: f64 },

    /// A zero local-trace target describes the trivial (empty) system.
    #[error("trivial system: the local trace target f_loc is zero")]
    TrivialSystem,

    /// The constraint set admits no occupation or no feasible move.
    #[error("infeasible constraints: {0}")]
    Infeasible(String),

    /// The Dirac-sea construction produced no occupied state at all.
    #[error("empty sea: no admissible (omega, k) for mass {mass} on a {n_t}x{n_r} lattice")]
    EmptySea { mass: f64, n_t: u32, n_r: u32 },

    /// Rescaling the weights to meet the trace target would push some
    /// weight to or below the relaxed-mode floor epsilon.
    #[error(
        "trace projection infeasible: rescaled phi = {phi} at (omega = {omega}, k = {k}) \
         falls to or below epsilon = {epsilon}"
    )]
    ProjectionInfeasible {
        omega: i32,
        k: u32,
        phi: f64,
        epsilon: f64,
    },

    /// Underlying I/O failure.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// JSON (de)serialization failure, including validation failures
    /// surfaced through serde.
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    /// CSV or other textual parse failure.
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Process exit code the CLI maps this error to: 1 for
    /// constraint/feasibility and internal-consistency failures,
    /// 2 for malformed input.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::TrivialSystem
            | Error::Infeasible(_)
            | Error::EmptySea { .. }
            | Error::ProjectionInfeasible { .. }
            | Error::NonRealDiscriminant { .. } => 1,
            _ => 2,
        }
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
