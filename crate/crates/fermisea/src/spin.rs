//! 2x2 spin algebra in the Pauli basis.
//!
//! Every matrix handled by this crate is stored by its coefficients in
//! the basis {1, sigma^1, sigma^2, sigma^3}:
//!
//! ```text
//! M = s*1 + a1*sigma^1 + a2*sigma^2 + a3*sigma^3
//! ```
//!
//! The kernel of the lattice model (projector evaluation plus closed
//! chains) only ever produces matrices with `a2 = 0`, but products of
//! two generic elements of the {1, sigma^1, sigma^3} span pick up an
//! `i*sigma^2` part, so the type carries all four coefficients to stay
//! closed under multiplication.
//!
//! The multiplication rule follows from the Pauli identity
//! (a.sigma)(b.sigma) = (a.b) 1 + i (a x b).sigma, extended bilinearly
//! over complex coefficients. The spin adjoint is `M* = sigma^3 M^dag
//! sigma^3`, the adjoint of the indefinite spin scalar product.

use num_complex::Complex64;
use std::ops::{Add, Mul, Neg, Sub};

/// Complex zero, handy for initializers.
pub const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Complex one.
pub const C_ONE: Complex64 = Complex64::new(1.0, 0.0);

/// 2x2 complex matrix in Pauli-basis coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinMatrix {
    /// Coefficient of the identity.
    pub s: Complex64,
    /// Coefficient of sigma^1.
    pub a1: Complex64,
    /// Coefficient of sigma^2 (zero for every projector value; nonzero
    /// components only arise inside generic products).
    pub a2: Complex64,
    /// Coefficient of sigma^3.
    pub a3: Complex64,
}

impl SpinMatrix {
    /// The zero matrix.
    pub fn zero() -> Self {
        Self {
            s: C_ZERO,
            a1: C_ZERO,
            a2: C_ZERO,
            a3: C_ZERO,
        }
    }

    /// The identity matrix.
    pub fn identity() -> Self {
        Self {
            s: C_ONE,
            a1: C_ZERO,
            a2: C_ZERO,
            a3: C_ZERO,
        }
    }

    /// Build from the four Pauli coefficients.
    pub fn new(s: Complex64, a1: Complex64, a2: Complex64, a3: Complex64) -> Self {
        Self { s, a1, a2, a3 }
    }

    /// Trace: `tr M = 2 s`.
    pub fn trace(&self) -> Complex64 {
        2.0 * self.s
    }

    /// Complex dot product of the Pauli vector with itself,
    /// `a.a = a1^2 + a2^2 + a3^2` (squares, not modulus squares).
    pub fn vector_dot_self(&self) -> Complex64 {
        self.a1 * self.a1 + self.a2 * self.a2 + self.a3 * self.a3
    }

    /// Determinant: `det M = s^2 - a.a`.
    pub fn det(&self) -> Complex64 {
        self.s * self.s - self.vector_dot_self()
    }

    /// Spin adjoint `M* = sigma^3 M^dag sigma^3`.
    ///
    /// In coefficients: (s, a1, a2, a3) -> (conj s, -conj a1, -conj a2,
    /// conj a3), since sigma^3 anticommutes with sigma^1 and sigma^2.
    pub fn spin_adjoint(&self) -> Self {
        Self {
            s: self.s.conj(),
            a1: -self.a1.conj(),
            a2: -self.a2.conj(),
            a3: self.a3.conj(),
        }
    }

    /// Closed chain `A = M M*`.
    pub fn closed_chain(&self) -> Self {
        *self * self.spin_adjoint()
    }

    /// Dense 2x2 representation `[[m00, m01], [m10, m11]]`, row major.
    pub fn to_dense(&self) -> [[Complex64; 2]; 2] {
        let i = Complex64::new(0.0, 1.0);
        [
            [self.s + self.a3, self.a1 - i * self.a2],
            [self.a1 + i * self.a2, self.s - self.a3],
        ]
    }

    /// Largest coefficient modulus; a cheap norm for tolerance scaling.
    pub fn max_norm(&self) -> f64 {
        self.s
            .norm()
            .max(self.a1.norm())
            .max(self.a2.norm())
            .max(self.a3.norm())
    }
}

impl Add for SpinMatrix {
    type Output = SpinMatrix;
    fn add(self, rhs: SpinMatrix) -> SpinMatrix {
        SpinMatrix {
            s: self.s + rhs.s,
            a1: self.a1 + rhs.a1,
            a2: self.a2 + rhs.a2,
            a3: self.a3 + rhs.a3,
        }
    }
}

impl Sub for SpinMatrix {
    type Output = SpinMatrix;
    fn sub(self, rhs: SpinMatrix) -> SpinMatrix {
        SpinMatrix {
            s: self.s - rhs.s,
            a1: self.a1 - rhs.a1,
            a2: self.a2 - rhs.a2,
            a3: self.a3 - rhs.a3,
        }
    }
}

impl Neg for SpinMatrix {
    type Output = SpinMatrix;
    fn neg(self) -> SpinMatrix {
        SpinMatrix {
            s: -self.s,
            a1: -self.a1,
            a2: -self.a2,
            a3: -self.a3,
        }
    }
}

impl Mul<SpinMatrix> for SpinMatrix {
    type Output = SpinMatrix;

    /// Product via the Pauli identity:
    /// scalar part `s t + a.b`, vector part `s b + t a + i (a x b)`.
    fn mul(self, rhs: SpinMatrix) -> SpinMatrix {
        let i = Complex64::new(0.0, 1.0);
        let (s, t) = (self.s, rhs.s);
        let (a1, a2, a3) = (self.a1, self.a2, self.a3);
        let (b1, b2, b3) = (rhs.a1, rhs.a2, rhs.a3);
        SpinMatrix {
            s: s * t + a1 * b1 + a2 * b2 + a3 * b3,
            a1: s * b1 + t * a1 + i * (a2 * b3 - a3 * b2),
            a2: s * b2 + t * a2 + i * (a3 * b1 - a1 * b3),
            a3: s * b3 + t * a3 + i * (a1 * b2 - a2 * b1),
        }
    }
}

impl Mul<SpinMatrix> for Complex64 {
    type Output = SpinMatrix;
    fn mul(self, rhs: SpinMatrix) -> SpinMatrix {
        SpinMatrix {
            s: self * rhs.s,
            a1: self * rhs.a1,
            a2: self * rhs.a2,
            a3: self * rhs.a3,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sigma1() -> SpinMatrix {
        SpinMatrix::new(C_ZERO, C_ONE, C_ZERO, C_ZERO)
    }

    fn sigma2() -> SpinMatrix {
        SpinMatrix::new(C_ZERO, C_ZERO, C_ONE, C_ZERO)
    }

    fn sigma3() -> SpinMatrix {
        SpinMatrix::new(C_ZERO, C_ZERO, C_ZERO, C_ONE)
    }

    fn assert_close(a: SpinMatrix, b: SpinMatrix, tol: f64) {
        assert!((a - b).max_norm() <= tol, "{a:?} != {b:?}");
    }

    #[test]
    fn pauli_multiplication_table() {
        let i = c(0.0, 1.0);
        // sigma_i^2 = 1
        assert_close(sigma1() * sigma1(), SpinMatrix::identity(), 0.0);
        assert_close(sigma2() * sigma2(), SpinMatrix::identity(), 0.0);
        assert_close(sigma3() * sigma3(), SpinMatrix::identity(), 0.0);
        // cyclic products: sigma1 sigma2 = i sigma3, etc.
        assert_close(sigma1() * sigma2(), i * sigma3(), 0.0);
        assert_close(sigma2() * sigma3(), i * sigma1(), 0.0);
        assert_close(sigma3() * sigma1(), i * sigma2(), 0.0);
        // anticommutation
        assert_close(sigma2() * sigma1(), -(i * sigma3()), 0.0);
    }

    #[test]
    fn spin_adjoint_flips_sigma1_and_sigma2() {
        let m = SpinMatrix::new(c(1.0, 2.0), c(3.0, -4.0), c(-0.5, 0.25), c(-2.0, 1.0));
        let adj = m.spin_adjoint();
        assert_eq!(adj.s, m.s.conj());
        assert_eq!(adj.a1, -m.a1.conj());
        assert_eq!(adj.a2, -m.a2.conj());
        assert_eq!(adj.a3, m.a3.conj());
        // Involution: (M*)* = M.
        assert_close(adj.spin_adjoint(), m, 0.0);
    }

    #[test]
    fn closed_chain_of_projector_like_matrix() {
        // P = 1 - sigma^3: P* = P, so A = P^2 = 2(1 - sigma^3).
        let p = SpinMatrix::identity() - sigma3();
        let a = p.closed_chain();
        let expected = SpinMatrix::new(c(2.0, 0.0), C_ZERO, C_ZERO, c(-2.0, 0.0));
        assert_close(a, expected, 0.0);
        assert_eq!(a.trace(), c(4.0, 0.0));
    }

    #[test]
    fn closed_chain_of_i_sigma1() {
        // P = i sigma^1: P* = sigma^3 (i sigma^1)^dag sigma^3
        //              = sigma^3 (-i sigma^1) sigma^3 = i sigma^1,
        // hence A = (i sigma^1)^2 = -1.
        let p = Complex64::new(0.0, 1.0) * sigma1();
        let a = p.closed_chain();
        assert_close(a, -SpinMatrix::identity(), 0.0);
    }

    #[test]
    fn dense_representation_round_trips_products() {
        let m = SpinMatrix::new(c(0.3, -1.2), c(2.0, 0.7), c(-0.1, 0.4), c(1.5, -0.6));
        let n = SpinMatrix::new(c(-0.8, 0.2), c(0.9, -1.1), c(0.25, 0.0), c(-0.4, 2.2));
        let prod = (m * n).to_dense();
        let (dm, dn) = (m.to_dense(), n.to_dense());
        for r in 0..2 {
            for cc in 0..2 {
                let want = dm[r][0] * dn[0][cc] + dm[r][1] * dn[1][cc];
                assert!((prod[r][cc] - want).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn trace_and_det_match_dense() {
        let m = SpinMatrix::new(c(0.5, 0.1), c(-1.0, 0.3), c(0.2, -0.2), c(0.0, 1.0));
        let d = m.to_dense();
        assert!((m.trace() - (d[0][0] + d[1][1])).norm() < 1e-15);
        assert!((m.det() - (d[0][0] * d[1][1] - d[0][1] * d[1][0])).norm() < 1e-15);
    }
}
