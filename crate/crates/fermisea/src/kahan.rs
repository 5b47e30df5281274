//! Compensated summation (Kahan–Babuška–Neumaier variant).
//!
//! All reductions over lattice points and occupied states use a fixed
//! iteration order plus compensated summation, so totals are bit-stable
//! across platforms and independent of how callers might parallelize
//! the surrounding map. The Neumaier variant also survives the case
//! where the running sum itself cancels, which classic Kahan does not.

use num_complex::Complex64;

/// Compensated accumulator for `f64`.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    /// New accumulator at zero.
    pub fn new() -> Self {
        Self::default()
    }

    /// Add one term.
    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.comp += (self.sum - t) + value;
        } else {
            self.comp += (value - t) + self.sum;
        }
        self.sum = t;
    }

    /// Current compensated total.
    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Componentwise Kahan accumulator for `Complex64`.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanComplex {
    re: KahanSum,
    im: KahanSum,
}

impl KahanComplex {
    /// New accumulator at zero.
    pub fn new() -> Self {
        Self::default()
    }

    /// Add one term.
    pub fn add(&mut self, value: Complex64) {
        self.re.add(value.re);
        self.im.add(value.im);
    }

    /// Current compensated total.
    pub fn total(&self) -> Complex64 {
        Complex64::new(self.re.total(), self.im.total())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancellation_lost_by_naive_sum() {
        let terms = [1.0e16, 1.0, -1.0e16, 1.0];
        let naive: f64 = terms.iter().sum();
        let mut kahan = KahanSum::new();
        for &t in &terms {
            kahan.add(t);
        }
        assert_eq!(kahan.total(), 2.0);
        // The naive sum drops at least one of the unit terms.
        assert_ne!(naive, 2.0);
    }

    #[test]
    fn complex_matches_componentwise() {
        let mut acc = KahanComplex::new();
        for n in 1..=1000 {
            acc.add(Complex64::new(1.0 / n as f64, -1.0 / n as f64));
        }
        assert!((acc.total().re + acc.total().im).abs() < 1e-15);
    }
}
