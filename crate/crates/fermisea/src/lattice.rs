//! Lattice geometry.
//!
//! The model lives on a finite position lattice
//!
//! ```text
//! L = {2 pi n / N_t : n = 0..N_t-1} x {2 pi m / N_r : m = 0..N_r-1}
//! ```
//!
//! together with its dual momentum lattice
//!
//! ```text
//! L^ = {-(N_t-1), ..., -1, 0} x {1, ..., N_r}
//! ```
//!
//! with unit momentum spacing and position spacings 2 pi / N. The
//! point k = 0 is deliberately absent from the dual lattice, while
//! r = 0 is present in the position lattice.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// Lattice dimensions (N_t, N_r).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeSpec {
    /// Number of time points N_t.
    pub n_t: u32,
    /// Number of radial points N_r.
    pub n_r: u32,
}

/// One position-lattice point (t, r) with its integer indices.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PositionPoint {
    /// Time index n, 0..N_t.
    pub n: u32,
    /// Radial index m, 0..N_r.
    pub m: u32,
    /// t = 2 pi n / N_t.
    pub t: f64,
    /// r = 2 pi m / N_r.
    pub r: f64,
}

/// One dual-lattice point (omega, k).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DualPoint {
    /// Energy index omega in {-(N_t-1), ..., 0}.
    pub omega: i32,
    /// Momentum index k in {1, ..., N_r}.
    pub k: u32,
}

impl LatticeSpec {
    /// Validated constructor; both dimensions must be at least 1.
    pub fn new(n_t: u32, n_r: u32) -> Result<Self> {
        if n_t == 0 || n_r == 0 {
            return Err(Error::InvalidLattice { n_t, n_r });
        }
        Ok(Self { n_t, n_r })
    }

    /// Time coordinate of index n.
    pub fn t_of(&self, n: u32) -> f64 {
        TAU * f64::from(n) / f64::from(self.n_t)
    }

    /// Radial coordinate of index m.
    pub fn r_of(&self, m: u32) -> f64 {
        TAU * f64::from(m) / f64::from(self.n_r)
    }

    /// True iff (omega, k) lies on the dual lattice.
    pub fn contains_dual(&self, omega: i32, k: u32) -> bool {
        let omega_min = -(self.n_t as i32 - 1);
        (omega_min..=0).contains(&omega) && (1..=self.n_r).contains(&k)
    }

    /// Wrap an arbitrary integer energy index into {-(N_t-1), ..., 0}
    /// respecting the periodic boundary conditions (omega and
    /// omega + N_t label the same plane wave).
    pub fn wrap_omega(&self, omega: i32) -> i32 {
        let n_t = self.n_t as i32;
        let residue = omega.rem_euclid(n_t); // 0..N_t
        if residue == 0 {
            0
        } else {
            residue - n_t
        }
    }
}

/// Enumerate the position and dual lattices in row-major order
/// (time-like index outermost).
pub fn build_lattice(spec: LatticeSpec) -> (Vec<PositionPoint>, Vec<DualPoint>) {
    let mut positions = Vec::with_capacity((spec.n_t * spec.n_r) as usize);
    for n in 0..spec.n_t {
        for m in 0..spec.n_r {
            positions.push(PositionPoint {
                n,
                m,
                t: spec.t_of(n),
                r: spec.r_of(m),
            });
        }
    }
    let mut duals = Vec::with_capacity((spec.n_t * spec.n_r) as usize);
    for omega in -(spec.n_t as i32 - 1)..=0 {
        for k in 1..=spec.n_r {
            duals.push(DualPoint { omega, k });
        }
    }
    (positions, duals)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_dimensions() {
        assert!(LatticeSpec::new(0, 4).is_err());
        assert!(LatticeSpec::new(4, 0).is_err());
        assert!(LatticeSpec::new(1, 1).is_ok());
    }

    #[test]
    fn smallest_lattice() {
        let spec = LatticeSpec::new(1, 1).unwrap();
        let (pos, dual) = build_lattice(spec);
        assert_eq!(pos.len(), 1);
        assert_eq!((pos[0].t, pos[0].r), (0.0, 0.0));
        assert_eq!(dual, vec![DualPoint { omega: 0, k: 1 }]);
    }

    #[test]
    fn eight_by_six_lattice_counts_and_ranges() {
        let spec = LatticeSpec::new(8, 6).unwrap();
        let (pos, dual) = build_lattice(spec);
        assert_eq!(pos.len(), 48);
        assert_eq!(dual.len(), 48);
        assert_eq!(dual.iter().map(|d| d.omega).min(), Some(-7));
        assert_eq!(dual.iter().map(|d| d.omega).max(), Some(0));
        assert_eq!(dual.iter().map(|d| d.k).min(), Some(1));
        assert_eq!(dual.iter().map(|d| d.k).max(), Some(6));
        // Row-major: omega outermost ascending, k innermost.
        assert_eq!(dual[0], DualPoint { omega: -7, k: 1 });
        assert_eq!(dual[5], DualPoint { omega: -7, k: 6 });
        assert_eq!(dual[6], DualPoint { omega: -6, k: 1 });
    }

    #[test]
    fn two_by_three_position_coordinates() {
        use std::f64::consts::PI;
        let spec = LatticeSpec::new(2, 3).unwrap();
        let (pos, _) = build_lattice(spec);
        let ts: Vec<f64> = pos.iter().map(|p| p.t).collect();
        let rs: Vec<f64> = pos.iter().map(|p| p.r).collect();
        assert_eq!(ts, vec![0.0, 0.0, 0.0, PI, PI, PI]);
        let third = TAU / 3.0;
        for (got, want) in rs
            .iter()
            .zip([0.0, third, 2.0 * third, 0.0, third, 2.0 * third])
        {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn omega_wrapping_is_periodic_and_in_range() {
        let spec = LatticeSpec::new(8, 6).unwrap();
        for omega in -7..=0 {
            assert_eq!(spec.wrap_omega(omega), omega);
            for shift in -3..=3 {
                let wrapped = spec.wrap_omega(omega + shift * 8);
                assert_eq!(wrapped, omega);
            }
        }
        assert_eq!(spec.wrap_omega(1), -7);
        assert_eq!(spec.wrap_omega(8), 0);
        assert_eq!(spec.wrap_omega(-8), 0);
    }
}
