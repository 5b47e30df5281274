//! Discriminant, Lagrangian, causal classification, closed-chain
//! eigenvalues, and the weighted total action.
//!
//! For a closed chain A the discriminant is
//!
//! ```text
//! D[A] = 1/2 tr(A^2) - 1/4 (tr A)^2
//! ```
//!
//! which in Pauli coordinates A = s*1 + a.sigma reduces exactly to the
//! complex square a.a of the vector part (the s^2 contributions
//! cancel). D is real for closed chains; the imaginary residue is
//! monitored against a relative tolerance and flagged as an
//! internal-consistency error if exceeded, since a non-real D can only
//! come from an algebra defect.
//!
//! The Lagrangian is the positive part L[A] = D[A] Theta(D[A]), and a
//! lattice point is timelike when D >= 0, spacelike when D < 0 (the
//! boundary D = 0 counts as timelike). The action is
//!
//! ```text
//! S = 1/(N_t N_r^3) sum_{(t,r)} rho_t(t) rho_r(r) L[A(t,r)]
//! ```
//!
//! with weights rho_t = 1 at n = 0 and 2 otherwise, rho_r = 1 at n = 0
//! and (2n+1)^3 - (2n-1)^3 otherwise. The sum runs in row-major
//! lattice order with compensated summation, so totals are bit-stable.

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::kahan::KahanSum;
use crate::projector::evaluate_projector;
use crate::spin::SpinMatrix;
use num_complex::Complex64;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

/// Relative tolerance for the imaginary residue of the discriminant.
pub const IM_RESIDUE_TOL: f64 = 1e-10;

/// Causal classification of a lattice point by the sign of D.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CausalClass {
    /// D >= 0 (the D = 0 boundary is timelike).
    Timelike,
    /// D < 0.
    Spacelike,
}

impl fmt::Display for CausalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CausalClass::Timelike => "timelike",
            CausalClass::Spacelike => "spacelike",
        })
    }
}

impl FromStr for CausalClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "timelike" => Ok(CausalClass::Timelike),
            "spacelike" => Ok(CausalClass::Spacelike),
            other => Err(Error::Parse(format!("unknown causal class {other:?}"))),
        }
    }
}

/// Discriminant D[A] = 1/2 tr(A^2) - 1/4 (tr A)^2 as a complex number
/// (exact Pauli-coordinate form a.a), without the realness check.
pub fn discriminant_complex(a: &SpinMatrix) -> Complex64 {
    a.vector_dot_self()
}

/// Scale used for the imaginary-residue check:
/// |tr(A^2)| + |tr A|^2 + 1.
fn residue_scale(a: &SpinMatrix) -> f64 {
    let tr = a.trace();
    let tr_sq = 2.0 * (a.s * a.s + a.vector_dot_self());
    tr_sq.norm() + tr.norm() * tr.norm() + 1.0
}

/// Discriminant D[A], asserting that the imaginary part stays below
/// [`IM_RESIDUE_TOL`] relative to |tr(A^2)| + |tr A|^2 + 1.
pub fn discriminant(a: &SpinMatrix) -> Result<f64> {
    let d = discriminant_complex(a);
    let tol = IM_RESIDUE_TOL * residue_scale(a);
    if d.im.abs() > tol {
        return Err(Error::NonRealDiscriminant {
            residue: d.im,
            tolerance: tol,
        });
    }
    Ok(d.re)
}

/// Lagrangian L[A] = D[A] Theta(D[A]) = max(D, 0).
pub fn lagrangian(a: &SpinMatrix) -> Result<f64> {
    Ok(discriminant(a)?.max(0.0))
}

/// Causal class of a closed chain: timelike iff D >= 0.
pub fn causal_class(a: &SpinMatrix) -> Result<CausalClass> {
    Ok(if discriminant(a)? >= 0.0 {
        CausalClass::Timelike
    } else {
        CausalClass::Spacelike
    })
}

/// Eigenvalues of a Pauli-coordinate matrix: for A = s*1 + a.sigma the
/// characteristic roots are exactly
///
/// ```text
/// lambda_pm = s +- sqrt(a.a) = 1/2 tr A +- sqrt(D[A])
/// ```
///
/// For a closed chain of P = phi*1 + v0 sigma^3 + vr sigma^1 this is
/// the familiar form (v.vbar + phi phibar) +- sqrt(D) with the 1+1
/// Minkowski contraction v.w = v0 w0 - vr wr.
pub fn chain_eigenvalues(a: &SpinMatrix) -> (Complex64, Complex64) {
    let root = discriminant_complex(a).sqrt();
    (a.s + root, a.s - root)
}

/// Time weight: 1 at n = 0, else 2. Rejects n >= N_t.
pub fn weight_rho_t(n: u32, n_t: u32) -> Result<f64> {
    if n >= n_t {
        return Err(Error::InvalidArgument(format!(
            "time index {n} out of range for N_t = {n_t}"
        )));
    }
    Ok(if n == 0 { 1.0 } else { 2.0 })
}

/// Radial weight: 1 at n = 0, else (2n+1)^3 - (2n-1)^3. Rejects
/// n >= N_r.
pub fn weight_rho_r(n: u32, n_r: u32) -> Result<f64> {
    if n >= n_r {
        return Err(Error::InvalidArgument(format!(
            "radial index {n} out of range for N_r = {n_r}"
        )));
    }
    if n == 0 {
        Ok(1.0)
    } else {
        let n = f64::from(n);
        Ok((2.0 * n + 1.0).powi(3) - (2.0 * n - 1.0).powi(3))
    }
}

/// One row of an [`ActionReport`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointReport {
    /// Time coordinate t = 2 pi n / N_t.
    pub t: f64,
    /// Radial coordinate r = 2 pi m / N_r.
    pub r: f64,
    /// Discriminant D[A(t, r)].
    pub discriminant: f64,
    /// Lagrangian L[A(t, r)] = max(D, 0).
    pub lagrangian: f64,
    /// Causal class at the point.
    pub causal: CausalClass,
    /// Combined weight rho_t(t) * rho_r(r).
    pub weight: f64,
}

/// Per-point Lagrangian data plus the weighted total action.
#[derive(Clone, Debug, PartialEq)]
pub struct ActionReport {
    /// Rows in row-major lattice order (time index outermost).
    pub per_point: Vec<PointReport>,
    /// Total action S.
    pub total: f64,
}

/// Walk the lattice in row-major order, handing each evaluated point
/// to `on_point`, and return the weighted, compensated total.
fn fold_action(
    config: &Configuration,
    mut on_point: impl FnMut(PointReport),
) -> Result<f64> {
    let spec = config.spec();
    let mut acc = KahanSum::new();
    for n in 0..spec.n_t {
        let t = spec.t_of(n);
        let rho_t = weight_rho_t(n, spec.n_t)?;
        for m in 0..spec.n_r {
            let r = spec.r_of(m);
            let rho_r = weight_rho_r(m, spec.n_r)?;
            let a = evaluate_projector(config, t, r).closed_chain();
            let d = discriminant(&a)?;
            let l = d.max(0.0);
            let weight = rho_t * rho_r;
            acc.add(weight * l);
            on_point(PointReport {
                t,
                r,
                discriminant: d,
                lagrangian: l,
                causal: if d >= 0.0 {
                    CausalClass::Timelike
                } else {
                    CausalClass::Spacelike
                },
                weight,
            });
        }
    }
    let norm = f64::from(spec.n_t) * f64::from(spec.n_r).powi(3);
    Ok(acc.total() / norm)
}

/// Evaluate the full action with per-point rows.
pub fn action(config: &Configuration) -> Result<ActionReport> {
    let spec = config.spec();
    let mut per_point = Vec::with_capacity((spec.n_t * spec.n_r) as usize);
    let total = fold_action(config, |row| per_point.push(row))?;
    Ok(ActionReport { per_point, total })
}

/// Evaluate only the total action S (no row storage); identical
/// summation order and result as [`action`].
pub fn action_total(config: &Configuration) -> Result<f64> {
    fold_action(config, |_| {})
}

/// Closed form of the Lagrangian at the origin:
///
/// ```text
/// L[A(0,0)] = 4 f_loc^2 (sum k Phi cosh tau)^2
/// ```
///
/// with f_loc the local trace. Serves as an independent oracle for the
/// (0, 0) row of [`action`].
pub fn origin_lagrangian_closed_form(config: &Configuration) -> f64 {
    let f_loc = config.local_trace();
    let boosted: f64 = config
        .states()
        .iter()
        .map(|s| f64::from(s.k) * s.phi * s.tau.cosh())
        .sum();
    4.0 * f_loc * f_loc * boosted * boosted
}

impl ActionReport {
    /// Serialize to CSV: header `t,r,D,L,causal,weight`, one row per
    /// lattice point in row-major order, then a trailing comment line
    /// `# S = <total>`. Floats carry 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,r,D,L,causal,weight\n");
        for row in &self.per_point {
            out.push_str(&format!(
                "{:.16e},{:.16e},{:.16e},{:.16e},{},{:.16e}\n",
                row.t, row.r, row.discriminant, row.lagrangian, row.causal, row.weight
            ));
        }
        out.push_str(&format!("# S = {:.16e}\n", self.total));
        out
    }

    /// Parse the CSV form written by [`ActionReport::to_csv`].
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        match lines.next() {
            Some("t,r,D,L,causal,weight") => {}
            other => {
                return Err(Error::Parse(format!(
                    "expected action report header, got {other:?}"
                )))
            }
        }
        let mut per_point = Vec::new();
        let mut total = None;
        for line in lines {
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("# S = ") {
                total = Some(parse_f64(rest)?);
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 6 {
                return Err(Error::Parse(format!(
                    "expected 6 fields per action row, got {}: {line:?}",
                    fields.len()
                )));
            }
            per_point.push(PointReport {
                t: parse_f64(fields[0])?,
                r: parse_f64(fields[1])?,
                discriminant: parse_f64(fields[2])?,
                lagrangian: parse_f64(fields[3])?,
                causal: fields[4].parse()?,
                weight: parse_f64(fields[5])?,
            });
        }
        let total =
            total.ok_or_else(|| Error::Parse("missing trailing '# S = <total>' line".into()))?;
        Ok(ActionReport { per_point, total })
    }

    /// Write the CSV form to a file.
    pub fn write_csv_file(&self, path: &Path) -> Result<()> {
        Ok(std::fs::write(path, self.to_csv())?)
    }

    /// Read the CSV form from a file.
    pub fn read_csv_file(path: &Path) -> Result<Self> {
        Self::from_csv(&std::fs::read_to_string(path)?)
    }
}

pub(crate) fn parse_f64(s: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|e| Error::Parse(format!("bad float {s:?}: {e}")))
}
