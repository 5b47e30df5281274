//! Evaluation of the fermionic projector P(t, r).
//!
//! For a configuration with occupied states (omega, k, Phi, tau) the
//! projector at a position-space point is
//!
//! ```text
//! P(t, r) = (1/r) sum e^{i omega t} Phi [ (1 - sigma^3 cosh tau) sin(kr)
//!             + sigma^1 sinh tau (cos(kr) - sin(kr)/(kr)) ]        r != 0
//! P(t, 0) =       sum e^{i omega t} k Phi (1 - sigma^3 cosh tau)
//! ```
//!
//! The r = 0 branch is the analytic r -> 0 limit of the first line.
//! Arbitrary real (t, r >= 0) are accepted, not only lattice points;
//! t is reduced mod 2 pi up front (omega is integer, so P is exactly
//! 2 pi periodic in t) to keep trig arguments small.

use crate::config::Configuration;
use crate::kahan::KahanComplex;
use crate::spin::SpinMatrix;
use num_complex::Complex64;
use std::f64::consts::TAU;

/// Below this |kr| the difference cos(x) - sin(x)/x is evaluated by
/// series to avoid cancellation. Lattice points never get close: the
/// smallest nonzero kr is 2 pi / N_r.
const SERIES_THRESHOLD: f64 = 1e-4;

/// cos(x) - sin(x)/x, stable near x = 0.
///
/// The Taylor expansion is -x^2/3 + x^4/30 - x^6/840 + ...; at the
/// series threshold the truncation error is far below 1 ulp.
fn cos_minus_sinc(x: f64) -> f64 {
    if x.abs() < SERIES_THRESHOLD {
        let x2 = x * x;
        -x2 / 3.0 * (1.0 - x2 / 10.0 * (1.0 - x2 / 28.0))
    } else {
        x.cos() - x.sin() / x
    }
}

/// Evaluate the projector at (t, r). Requires r >= 0; any real t is
/// accepted. The sum runs over occupied states in canonical order with
/// compensated summation per matrix component.
pub fn evaluate_projector(config: &Configuration, t: f64, r: f64) -> SpinMatrix {
    debug_assert!(r >= 0.0, "projector requires r >= 0, got {r}");
    let t = t.rem_euclid(TAU);
    let mut acc_s = KahanComplex::new();
    let mut acc_a1 = KahanComplex::new();
    let mut acc_a3 = KahanComplex::new();
    for state in config.states() {
        let phase = Complex64::cis(f64::from(state.omega) * t);
        let k = f64::from(state.k);
        if r == 0.0 {
            let amp = k * state.phi;
            acc_s.add(phase * amp);
            acc_a3.add(phase * (-amp * state.tau.cosh()));
        } else {
            let kr = k * r;
            let radial_scalar = state.phi * kr.sin() / r;
            let radial_vector = state.phi * state.tau.sinh() * cos_minus_sinc(kr) / r;
            acc_s.add(phase * radial_scalar);
            acc_a3.add(phase * (-radial_scalar * state.tau.cosh()));
            acc_a1.add(phase * radial_vector);
        }
    }
    SpinMatrix {
        s: acc_s.total(),
        a1: acc_a1.total(),
        a2: Complex64::new(0.0, 0.0),
        a3: acc_a3.total(),
    }
}
