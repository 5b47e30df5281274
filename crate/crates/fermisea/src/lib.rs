//! A two-dimensional lattice model of a static, isotropic system of
//! relativistic fermions, built from a discrete fermionic projector,
//! and the variational machinery to minimize its causal action.
//!
//! # Model
//!
//! Space-time is the finite lattice (t, r) in [0, 2pi)^2 with N_t time
//! points and N_r radial points. A system is described by a set of
//! occupied states on the dual (omega, k) lattice, each carrying a
//! weight Phi > 0 and a boost parameter tau. These determine the
//! fermionic projector P(t, r), a 2x2 matrix field expanded in Pauli
//! matrices ([`projector::evaluate_projector`]). From the projector,
//! each lattice point gets a closed chain A = P P* (with * the spin
//! adjoint), a discriminant D[A] = tr(A^2)/2 - (tr A)^2/4 whose sign
//! defines a discrete causal structure, and a Lagrangian L = max(D, 0)
//! that vanishes exactly on spacelike points. The action S is the
//! weighted lattice average of L ([`action::action`]).
//!
//! # Variational problem
//!
//! At fixed occupation the action is minimized over the boosts tau
//! (and in relaxed mode jointly over the weights Phi under the trace
//! constraint sum k Phi = f_loc) via multi-start derivative-free
//! descent ([`optimize::minimize_tau`]). Occupations themselves are
//! enumerated under the normalization and trace conditions and
//! searched exhaustively up to gauge equivalence
//! ([`optimize::global_minimize`]). For the benchmark two-particle
//! system on an 8x6 lattice the minimizer spontaneously breaks parity:
//! the optimal boosts are a nonzero pair (tau_1, tau_2) and its
//! negative, strictly below the parity-symmetric point tau = 0.
//!
//! # Tooling
//!
//! [`scan`] tabulates two-parameter action landscapes, [`sea`]
//! generates discretized Dirac-sea occupations for a given mass, and
//! [`cli`] wires everything into a command-line tool with
//! deterministic, exactly round-tripping CSV/JSON output.

pub mod action;
pub mod cli;
pub mod config;
pub mod error;
mod kahan;
pub mod lattice;
pub mod optimize;
pub mod projector;
pub mod scan;
pub mod sea;
pub mod spin;

pub use action::{action, action_total, ActionReport};
pub use config::{Configuration, Mode, OccupiedState};
pub use error::{Error, Result};
pub use lattice::{DualPoint, LatticeSpec, PositionPoint};
pub use optimize::{
    enumerate_occupations, global_minimize, minimize_tau, MinimizationResult, OptimizerSettings,
};
pub use projector::evaluate_projector;
pub use scan::{scan_landscape, ScanGrid};
pub use sea::{dirac_sea_config, SeaParams};
pub use spin::SpinMatrix;
