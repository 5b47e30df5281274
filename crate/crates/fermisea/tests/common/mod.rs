//! Shared test oracles.
//!
//! Everything here is written independently of the library's
//! Pauli-coefficient representation: dense 2x2 complex matrices with
//! textbook arithmetic, a from-scratch projector evaluation with plain
//! (uncompensated) sums, and seeded random-configuration generators
//! for the property corpora.

#![allow(dead_code)]

use fermisea::{Configuration, LatticeSpec, Mode, OccupiedState, SpinMatrix};
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type C = Complex64;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// Dense 2x2 complex matrix, row-major.
#[derive(Clone, Copy, Debug)]
pub struct Dense(pub [[C; 2]; 2]);

impl Dense {
    pub fn zero() -> Self {
        Dense([[c(0.0, 0.0); 2]; 2])
    }

    pub fn identity() -> Self {
        Dense([[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]])
    }

    /// Pauli matrices sigma^1, sigma^2, sigma^3, built from their
    /// textbook entries.
    pub fn sigma(j: usize) -> Self {
        match j {
            1 => Dense([[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]]),
            2 => Dense([[c(0.0, 0.0), c(0.0, -1.0)], [c(0.0, 1.0), c(0.0, 0.0)]]),
            3 => Dense([[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]]),
            _ => panic!("sigma index must be 1, 2, or 3"),
        }
    }

    pub fn from_spin(m: &SpinMatrix) -> Self {
        Dense(m.to_dense())
    }

    /// Build s*I + a1*sigma1 + a2*sigma2 + a3*sigma3 from dense Pauli
    /// matrices (an independent reconstruction of the coefficient
    /// expansion).
    pub fn from_coefficients(s: C, a1: C, a2: C, a3: C) -> Self {
        Dense::identity()
            .scale(s)
            .add(Dense::sigma(1).scale(a1))
            .add(Dense::sigma(2).scale(a2))
            .add(Dense::sigma(3).scale(a3))
    }

    pub fn add(self, rhs: Self) -> Self {
        let mut out = Dense::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[i][j] + rhs.0[i][j];
            }
        }
        out
    }

    pub fn sub(self, rhs: Self) -> Self {
        let mut out = Dense::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[i][j] - rhs.0[i][j];
            }
        }
        out
    }

    pub fn scale(self, factor: C) -> Self {
        let mut out = Dense::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = factor * self.0[i][j];
            }
        }
        out
    }

    pub fn mul(self, rhs: Self) -> Self {
        let mut out = Dense::zero();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    out.0[i][j] += self.0[i][k] * rhs.0[k][j];
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn dagger(self) -> Self {
        let mut out = Dense::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[j][i].conj();
            }
        }
        out
    }

    /// Spin adjoint sigma^3 M^dagger sigma^3, via dense products.
    pub fn spin_adjoint(self) -> Self {
        Dense::sigma(3).mul(self.dagger()).mul(Dense::sigma(3))
    }

    pub fn trace(self) -> C {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(self) -> C {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    /// Roots of the characteristic polynomial, computed in the stable
    /// shifted form: with mu = tr/2 the matrix T = M - mu*I is
    /// trace-free, its eigenvalues are +-sqrt(-det T), and det T
    /// involves no large cancellation against tr^2 (unlike the naive
    /// quadratic formula discriminant tr^2 - 4 det).
    pub fn char_roots(self) -> (C, C) {
        let mu = self.trace() / 2.0;
        let shifted = self.sub(Dense::identity().scale(mu));
        let w = (-shifted.det()).sqrt();
        (mu + w, mu - w)
    }

    pub fn max_norm(self) -> f64 {
        let mut norm: f64 = 0.0;
        for row in &self.0 {
            for entry in row {
                norm = norm.max(entry.norm());
            }
        }
        norm
    }

    pub fn distance(self, rhs: Self) -> f64 {
        self.sub(rhs).max_norm()
    }
}

/// From-scratch dense projector evaluation: plain sums over states,
/// no compensated summation, no small-argument series switch. Valid
/// as an oracle at lattice points, where k*r is never tiny.
pub fn projector_dense(config: &Configuration, t: f64, r: f64) -> Dense {
    let mut acc = Dense::zero();
    for st in config.states() {
        let phase = C::from_polar(1.0, f64::from(st.omega) * t);
        let term = if r == 0.0 {
            Dense::identity()
                .add(Dense::sigma(3).scale(c(-st.tau.cosh(), 0.0)))
                .scale(c(f64::from(st.k) * st.phi, 0.0))
        } else {
            let kr = f64::from(st.k) * r;
            Dense::identity()
                .add(Dense::sigma(3).scale(c(-st.tau.cosh(), 0.0)))
                .scale(c(kr.sin(), 0.0))
                .add(Dense::sigma(1).scale(c(st.tau.sinh() * (kr.cos() - kr.sin() / kr), 0.0)))
                .scale(c(st.phi / r, 0.0))
        };
        acc = acc.add(term.scale(phase));
    }
    acc
}

/// A random spin matrix with complex coefficients in [-2, 2]^2.
pub fn random_spin(rng: &mut ChaCha8Rng) -> SpinMatrix {
    let mut draw = || c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
    SpinMatrix::new(draw(), draw(), draw(), draw())
}

/// A random valid configuration: lattice up to 12x12, 1..=5 distinct
/// occupied states, tau in [-2, 2], strict or relaxed mode.
pub fn random_config(rng: &mut ChaCha8Rng) -> Configuration {
    let n_t = rng.gen_range(1..=12);
    let n_r = rng.gen_range(1..=12);
    let spec = LatticeSpec::new(n_t, n_r).unwrap();
    let mut duals: Vec<(i32, u32)> = Vec::new();
    for omega in -(n_t as i32 - 1)..=0 {
        for k in 1..=n_r {
            duals.push((omega, k));
        }
    }
    duals.shuffle(rng);
    let particles = rng.gen_range(1..=5.min(duals.len()));
    let relaxed = rng.gen_bool(0.5);
    let mode = if relaxed { Mode::Relaxed(0.05) } else { Mode::Strict };
    let states: Vec<OccupiedState> = duals[..particles]
        .iter()
        .map(|&(omega, k)| OccupiedState {
            omega,
            k,
            phi: if relaxed { rng.gen_range(0.2..1.5) } else { 1.0 },
            tau: rng.gen_range(-2.0..2.0),
        })
        .collect();
    Configuration::new(spec, mode, states).unwrap()
}

/// Deterministic corpus of random configurations.
pub fn corpus(seed: u64, count: usize) -> Vec<Configuration> {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_config(&mut rng)).collect()
}

/// All lattice (t, r) coordinates of a configuration's lattice.
pub fn lattice_points(config: &Configuration) -> Vec<(f64, f64)> {
    let spec = config.spec();
    let mut points = Vec::new();
    for n in 0..spec.n_t {
        for m in 0..spec.n_r {
            points.push((spec.t_of(n), spec.r_of(m)));
        }
    }
    points
}
