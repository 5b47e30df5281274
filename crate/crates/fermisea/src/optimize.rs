//! Minimization of the action over the variational degrees of freedom.
//!
//! Three layers:
//!
//! * [`minimize_tau`] — multi-start derivative-free (Nelder-Mead style)
//!   local minimization over the boost parameters tau at a fixed
//!   occupation, within the box |tau| <= `tau_bound`. In relaxed mode
//!   the weights Phi are varied jointly and re-projected onto the
//!   trace constraint after every step. The start schedule always
//!   contains tau = 0 and the parity images of the random starts, so
//!   both parity-conjugate basins are probed. Deterministic for a
//!   fixed seed.
//! * [`enumerate_occupations`] — streams every subset of the dual
//!   lattice whose momenta sum to the trace target (strict
//!   normalization), optionally restricted to an exact particle count.
//! * [`global_minimize`] — combines the two: enumerates occupations,
//!   quotients them by the gauge symmetry (energy-index translation),
//!   optimizes one representative per orbit, and returns the best
//!   result plus a ranked table of every occupation.
//!
//! The simplex method needs no gradients; the action is smooth in tau
//! except for kinks where a lattice point crosses the causal boundary
//! D = 0, which reflection-contraction descent handles robustly.
//! Finite differences appear only in the diagnostic
//! [`check_local_minimum`].

use crate::action::action_total;
use crate::config::{Configuration, Mode, OccupiedState};
use crate::error::{Error, Result};
use crate::lattice::{build_lattice, LatticeSpec};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::Error as _;
use serde::{Deserialize, Serialize};
use std::cell::RefCell;
use std::collections::BTreeMap;

/// Two occupations whose best actions differ by no more than this
/// (relative to the better one) are treated as tied; ties are ranked
/// by the canonical orbit order described at [`gauge_representative`].
pub const OCCUPATION_TIE_TOL: f64 = 1e-9;

/// Floor on the smallest finite-difference Hessian eigenvalue for a
/// point to still count as a local minimum.
pub const HESSIAN_EIG_FLOOR: f64 = -1e-6;

/// Knobs for the multi-start simplex minimizer.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizerSettings {
    /// Box half-width for every tau: the search stays in
    /// [-tau_bound, tau_bound]. Minimizing sequences have uniformly
    /// bounded cosh tau, so a generous box loses nothing.
    pub tau_bound: f64,
    /// Number of starts (the first is always tau = 0).
    pub n_starts: u32,
    /// Convergence tolerance on the action value.
    pub tol_action: f64,
    /// Convergence tolerance on the simplex extent.
    pub tol_step: f64,
    /// Evaluation budget per start.
    pub max_evals: u64,
    /// PRNG seed for the random starts.
    pub seed: u64,
}

impl Default for OptimizerSettings {
    fn default() -> Self {
        Self {
            tau_bound: 10.0,
            n_starts: 32,
            tol_action: 1e-10,
            tol_step: 1e-8,
            max_evals: 20_000,
            seed: 0,
        }
    }
}

impl OptimizerSettings {
    /// Check positivity requirements.
    pub fn validate(&self) -> Result<()> {
        if !(self.tau_bound >= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "tau_bound must be >= 1, got {}",
                self.tau_bound
            )));
        }
        if self.n_starts == 0 {
            return Err(Error::InvalidArgument("n_starts must be positive".into()));
        }
        if !(self.tol_action > 0.0) || !(self.tol_step > 0.0) {
            return Err(Error::InvalidArgument(
                "tolerances must be strictly positive".into(),
            ));
        }
        if self.max_evals == 0 {
            return Err(Error::InvalidArgument("max_evals must be positive".into()));
        }
        Ok(())
    }
}

/// One start of the multi-start schedule and the action it reached.
#[derive(Clone, Debug, PartialEq)]
pub struct StartRecord {
    /// Initial tau vector (canonical state order).
    pub start: Vec<f64>,
    /// Best action value reached from this start.
    pub action_value: f64,
}

/// One occupation branch of a global search. Only the occupation and
/// its best action are part of the JSON interface; the convergence
/// flag and the optimized gauge representative are in-memory
/// diagnostics.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BranchRecord {
    /// The occupation, as (omega, k) pairs in canonical (k, omega)
    /// state order.
    pub occupation: Vec<(i32, u32)>,
    /// Best action found for the branch's gauge orbit.
    #[serde(rename = "S")]
    pub action_value: f64,
    /// Whether the orbit's optimization converged.
    #[serde(skip)]
    pub converged: bool,
    /// The gauge-orbit representative that was actually optimized.
    #[serde(skip)]
    pub representative: Vec<(i32, u32)>,
}

/// Outcome of [`minimize_tau`] or [`global_minimize`].
#[derive(Clone, Debug, PartialEq)]
pub struct MinimizationResult {
    /// The optimum found.
    pub config: Configuration,
    /// Action at the optimum (recomputable from `config`).
    pub action_value: f64,
    /// Total number of action evaluations.
    pub n_evals: u64,
    /// True iff at least one start of the winning branch converged
    /// within its budget.
    pub converged: bool,
    /// Start-by-start log of the winning branch.
    pub starts_log: Vec<StartRecord>,
    /// Ranked occupation table (single entry for a fixed-occupation
    /// minimization).
    pub branches: Vec<BranchRecord>,
}

impl Serialize for MinimizationResult {
    fn serialize<S>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error>
    where
        S: serde::Serializer,
    {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(8))?;
        map.serialize_entry("n_t", &self.config.spec().n_t)?;
        map.serialize_entry("n_r", &self.config.spec().n_r)?;
        map.serialize_entry("mode", &self.config.mode())?;
        map.serialize_entry("states", self.config.states())?;
        map.serialize_entry("S", &self.action_value)?;
        map.serialize_entry("converged", &self.converged)?;
        map.serialize_entry("n_evals", &self.n_evals)?;
        map.serialize_entry("branches", &self.branches)?;
        map.end()
    }
}

#[derive(Deserialize)]
struct RawMinimizationResult {
    n_t: u32,
    n_r: u32,
    mode: Mode,
    states: Vec<OccupiedState>,
    #[serde(rename = "S")]
    action_value: f64,
    converged: bool,
    n_evals: u64,
    branches: Vec<BranchRecord>,
}

impl<'de> Deserialize<'de> for MinimizationResult {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        let raw = RawMinimizationResult::deserialize(deserializer)?;
        let spec = LatticeSpec::new(raw.n_t, raw.n_r).map_err(D::Error::custom)?;
        let config =
            Configuration::new(spec, raw.mode, raw.states).map_err(D::Error::custom)?;
        Ok(MinimizationResult {
            config,
            action_value: raw.action_value,
            n_evals: raw.n_evals,
            converged: raw.converged,
            starts_log: Vec::new(),
            branches: raw.branches,
        })
    }
}

impl MinimizationResult {
    /// Serialize to JSON (floats at 17 significant digits). The
    /// per-start log is an in-memory diagnostic and is not serialized.
    pub fn to_json(&self) -> String {
        crate::config::to_json_string(self)
    }

    /// Parse from JSON text.
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Raw outcome of one simplex descent.
#[derive(Clone, Debug)]
pub struct SimplexOutcome {
    /// Best point seen (over all evaluations, so never worse than the
    /// start).
    pub x: Vec<f64>,
    /// Objective at `x`.
    pub f: f64,
    /// Evaluations spent.
    pub n_evals: u64,
    /// True iff both the value spread and the simplex extent fell
    /// below tolerance before the budget ran out.
    pub converged: bool,
}

/// Derivative-free simplex (Nelder-Mead) descent with box clamping.
///
/// Every candidate is clamped into `[lower, upper]` componentwise
/// before evaluation. Convergence requires the value spread of the
/// simplex to fall below `tol_f * (1 + |f_best|)` and its extent below
/// `tol_x * (1 + |x_best|_inf)`.
pub fn nelder_mead<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    start: &[f64],
    lower: &[f64],
    upper: &[f64],
    tol_f: f64,
    tol_x: f64,
    max_evals: u64,
) -> SimplexOutcome {
    let dim = start.len();
    assert!(dim > 0, "simplex descent needs at least one dimension");
    assert!(lower.len() == dim && upper.len() == dim);
    let clamp = |x: &mut Vec<f64>| {
        for i in 0..dim {
            x[i] = x[i].clamp(lower[i], upper[i]);
        }
    };

    let mut n_evals: u64 = 0;
    let mut best_x = start.to_vec();
    clamp(&mut best_x);
    let mut best_f = f64::INFINITY;
    let mut eval = |x: &[f64], n_evals: &mut u64, best_x: &mut Vec<f64>, best_f: &mut f64| {
        *n_evals += 1;
        let v = f(x);
        if v < *best_f {
            *best_f = v;
            *best_x = x.to_vec();
        }
        v
    };

    // Initial simplex: the start plus one displaced vertex per axis.
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(dim + 1);
    let mut values: Vec<f64> = Vec::with_capacity(dim + 1);
    let mut v0 = start.to_vec();
    clamp(&mut v0);
    simplex.push(v0.clone());
    for i in 0..dim {
        let span = upper[i] - lower[i];
        let step = 0.25f64.min(span / 2.0).max(1e-8);
        let mut v = v0.clone();
        v[i] = if v[i] + step <= upper[i] {
            v[i] + step
        } else {
            v[i] - step
        };
        clamp(&mut v);
        simplex.push(v);
    }
    for v in &simplex {
        values.push(eval(v, &mut n_evals, &mut best_x, &mut best_f));
    }

    let mut converged = false;
    loop {
        // Order vertices by value.
        let mut order: Vec<usize> = (0..=dim).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        let (ibest, iworst) = (order[0], order[dim]);
        let isecond = order[dim - 1];

        let f_best = values[ibest];
        let spread = values[iworst] - f_best;
        let mut extent: f64 = 0.0;
        for v in &simplex {
            for i in 0..dim {
                extent = extent.max((v[i] - simplex[ibest][i]).abs());
            }
        }
        let x_scale = simplex[ibest].iter().fold(0.0f64, |m, &x| m.max(x.abs()));
        if spread <= tol_f * (1.0 + f_best.abs()) && extent <= tol_x * (1.0 + x_scale) {
            converged = true;
            break;
        }
        if n_evals >= max_evals {
            break;
        }

        // Centroid of all vertices but the worst.
        let mut centroid = vec![0.0; dim];
        for (idx, v) in simplex.iter().enumerate() {
            if idx == iworst {
                continue;
            }
            for i in 0..dim {
                centroid[i] += v[i];
            }
        }
        for c in centroid.iter_mut() {
            *c /= dim as f64;
        }

        let blend = |alpha: f64| -> Vec<f64> {
            let mut x = vec![0.0; dim];
            for i in 0..dim {
                x[i] = centroid[i] + alpha * (centroid[i] - simplex[iworst][i]);
            }
            let mut x = x;
            clamp(&mut x);
            x
        };

        let xr = blend(1.0);
        let fr = eval(&xr, &mut n_evals, &mut best_x, &mut best_f);
        if fr < f_best {
            // Try to expand.
            let xe = blend(2.0);
            let fe = eval(&xe, &mut n_evals, &mut best_x, &mut best_f);
            if fe < fr {
                simplex[iworst] = xe;
                values[iworst] = fe;
            } else {
                simplex[iworst] = xr;
                values[iworst] = fr;
            }
        } else if fr < values[isecond] {
            simplex[iworst] = xr;
            values[iworst] = fr;
        } else {
            // Contract (outside if the reflection helped at all,
            // inside otherwise).
            let xc = if fr < values[iworst] {
                blend(0.5)
            } else {
                blend(-0.5)
            };
            let fc = eval(&xc, &mut n_evals, &mut best_x, &mut best_f);
            if fc < values[iworst].min(fr) {
                simplex[iworst] = xc;
                values[iworst] = fc;
            } else {
                // Shrink toward the best vertex.
                let anchor = simplex[ibest].clone();
                for (idx, v) in simplex.iter_mut().enumerate() {
                    if idx == ibest {
                        continue;
                    }
                    for i in 0..dim {
                        v[i] = anchor[i] + 0.5 * (v[i] - anchor[i]);
                    }
                    values[idx] = eval(v, &mut n_evals, &mut best_x, &mut best_f);
                }
            }
        }
    }

    SimplexOutcome {
        x: best_x,
        f: best_f,
        n_evals,
        converged,
    }
}

/// Rescale all weights so the local trace equals `f_target` exactly.
/// Relaxed mode only; errors if any rescaled weight would fall to or
/// below the floor epsilon (weights are never silently dropped).
pub fn project_trace(config: &Configuration, f_target: f64) -> Result<Configuration> {
    let eps = match config.mode() {
        Mode::Relaxed(eps) => eps,
        Mode::Strict => {
            return Err(Error::InvalidArgument(
                "trace projection applies to relaxed mode only".into(),
            ))
        }
    };
    if !(f_target > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "trace target must be positive, got {f_target}"
        )));
    }
    let current = config.local_trace();
    if !(current > 0.0) {
        return Err(Error::InvalidArgument(
            "trace projection needs a configuration with positive local trace".into(),
        ));
    }
    let scale = f_target / current;
    let mut phis = Vec::with_capacity(config.states().len());
    for st in config.states() {
        let phi = st.phi * scale;
        if phi <= eps {
            return Err(Error::ProjectionInfeasible {
                omega: st.omega,
                k: st.k,
                phi,
                epsilon: eps,
            });
        }
        phis.push(phi);
    }
    config.with_phis(&phis)
}

/// Multi-start simplex minimization of the action over tau (and, in
/// relaxed mode, jointly over Phi with re-projection onto the trace
/// constraint after every step) at fixed occupation.
pub fn minimize_tau(
    config: &Configuration,
    settings: &OptimizerSettings,
) -> Result<MinimizationResult> {
    settings.validate()?;
    let p = config.states().len();
    if p == 0 {
        return Err(Error::InvalidArgument(
            "cannot minimize an empty configuration".into(),
        ));
    }
    let f_target = config.local_trace();
    let relaxed_eps = config.mode().epsilon();
    let dim = if relaxed_eps.is_some() { 2 * p } else { p };
    let ks: Vec<f64> = config.states().iter().map(|s| f64::from(s.k)).collect();

    // Candidate evaluation; infeasible weight projections score +inf,
    // internal-consistency failures are recorded and re-raised after
    // the search.
    let error_cell: RefCell<Option<Error>> = RefCell::new(None);
    let rebuild = |vars: &[f64]| -> Option<Configuration> {
        let taus = &vars[..p];
        let cand = match relaxed_eps {
            None => config.with_taus(taus).ok()?,
            Some(eps) => {
                let raw_phis = &vars[p..];
                let trace: f64 = ks.iter().zip(raw_phis).map(|(k, phi)| k * phi).sum();
                if !(trace > 0.0) {
                    return None;
                }
                let scale = f_target / trace;
                let mut phis = Vec::with_capacity(p);
                for phi in raw_phis {
                    let phi = phi * scale;
                    if phi <= eps {
                        return None;
                    }
                    phis.push(phi);
                }
                config.with_taus(taus).ok()?.with_phis(&phis).ok()?
            }
        };
        Some(cand)
    };
    let mut objective = |vars: &[f64]| -> f64 {
        match rebuild(vars) {
            None => f64::INFINITY,
            Some(cand) => match action_total(&cand) {
                Ok(v) => v,
                Err(e) => {
                    error_cell.replace(Some(e));
                    f64::INFINITY
                }
            },
        }
    };

    // Start schedule: tau = 0 first, then random draws in [-3, 3]^p
    // paired with their parity images. Relaxed-mode weight variables
    // always start from the input weights.
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let mut tau_starts: Vec<Vec<f64>> = vec![vec![0.0; p]];
    while tau_starts.len() < settings.n_starts as usize {
        let draw: Vec<f64> = (0..p).map(|_| rng.gen_range(-3.0..=3.0)).collect();
        let image: Vec<f64> = draw.iter().map(|t| -t).collect();
        tau_starts.push(draw);
        if tau_starts.len() < settings.n_starts as usize {
            tau_starts.push(image);
        }
    }

    let mut lower = vec![-settings.tau_bound; dim];
    let mut upper = vec![settings.tau_bound; dim];
    if relaxed_eps.is_some() {
        for i in p..dim {
            lower[i] = 0.0;
            upper[i] = f_target.max(1.0);
        }
    }

    let input_phis = config.phis();
    let mut starts_log = Vec::with_capacity(tau_starts.len());
    let mut total_evals: u64 = 0;
    let mut any_converged = false;
    let mut best: Option<(Vec<f64>, f64)> = None;
    for tau_start in &tau_starts {
        let mut start = tau_start.clone();
        if relaxed_eps.is_some() {
            start.extend_from_slice(&input_phis);
        }
        let outcome = nelder_mead(
            &mut objective,
            &start,
            &lower,
            &upper,
            settings.tol_action,
            settings.tol_step,
            settings.max_evals,
        );
        total_evals += outcome.n_evals;
        any_converged |= outcome.converged;
        starts_log.push(StartRecord {
            start: tau_start.clone(),
            action_value: outcome.f,
        });
        let better = match &best {
            None => true,
            Some((_, f)) => outcome.f < *f,
        };
        if better {
            best = Some((outcome.x, outcome.f));
        }
    }
    if let Some(e) = error_cell.into_inner() {
        return Err(e);
    }

    let (best_vars, _) = best.expect("at least one start");
    let final_config = rebuild(&best_vars)
        .expect("best point of a feasible search is feasible");
    let action_value = action_total(&final_config)?;
    let occupation: Vec<(i32, u32)> = final_config
        .states()
        .iter()
        .map(|s| (s.omega, s.k))
        .collect();
    Ok(MinimizationResult {
        config: final_config,
        action_value,
        n_evals: total_evals,
        converged: any_converged,
        starts_log,
        branches: vec![BranchRecord {
            occupation: occupation.clone(),
            action_value,
            converged: any_converged,
            representative: occupation,
        }],
    })
}

/// Stream of all occupations (subsets of the dual lattice, each point
/// at most once) whose momentum indices sum to the target, optionally
/// restricted to an exact particle count.
///
/// Occupations are produced in the lexicographic order of their index
/// sequences over the row-major dual lattice; each emitted occupation
/// is itself sorted in canonical (k, omega) order.
pub struct Occupations {
    omegas: Vec<i32>,
    momenta: Vec<u32>,
    suffix: Vec<u64>,
    target: u64,
    max_particles: Option<usize>,
    stack: Vec<usize>,
    sum: u64,
    cursor: usize,
    done: bool,
}

/// Enumerate occupations with momentum sum `f_loc` (strict
/// normalization: Phi = 1 at every occupied point, so the local trace
/// equals the momentum sum). `f_loc = 0` yields an empty stream.
pub fn enumerate_occupations(
    spec: LatticeSpec,
    f_loc: u32,
    n_particles: Option<u32>,
) -> Occupations {
    let (_, duals) = build_lattice(spec);
    let omegas: Vec<i32> = duals.iter().map(|d| d.omega).collect();
    let momenta: Vec<u32> = duals.iter().map(|d| d.k).collect();
    let mut suffix = vec![0u64; duals.len() + 1];
    for i in (0..duals.len()).rev() {
        suffix[i] = suffix[i + 1] + u64::from(momenta[i]);
    }
    Occupations {
        omegas,
        momenta,
        suffix,
        target: u64::from(f_loc),
        max_particles: n_particles.map(|n| n as usize),
        stack: Vec::new(),
        sum: 0,
        cursor: 0,
        done: f_loc == 0,
    }
}

impl Occupations {
    fn emit(&self) -> Vec<(i32, u32)> {
        let mut occ: Vec<(i32, u32)> = self
            .stack
            .iter()
            .map(|&i| (self.omegas[i], self.momenta[i]))
            .collect();
        occ.sort_by_key(|&(omega, k)| (k, omega));
        occ
    }

    fn backtrack(&mut self) -> bool {
        match self.stack.pop() {
            Some(i) => {
                self.sum -= u64::from(self.momenta[i]);
                self.cursor = i + 1;
                true
            }
            None => false,
        }
    }
}

impl Iterator for Occupations {
    type Item = Vec<(i32, u32)>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        loop {
            // Try to include the next feasible point at this level.
            let mut included = false;
            while self.cursor < self.omegas.len() {
                // Nothing from here on can complete the sum: give up
                // on this whole level.
                if self.sum + self.suffix[self.cursor] < self.target {
                    break;
                }
                let within_count = self
                    .max_particles
                    .map_or(true, |maxp| self.stack.len() < maxp);
                let within_sum =
                    self.sum + u64::from(self.momenta[self.cursor]) <= self.target;
                if within_count && within_sum {
                    self.stack.push(self.cursor);
                    self.sum += u64::from(self.momenta[self.cursor]);
                    self.cursor += 1;
                    included = true;
                    break;
                }
                self.cursor += 1;
            }
            if included {
                let count_ok = self
                    .max_particles
                    .map_or(true, |maxp| self.stack.len() == maxp);
                if self.sum == self.target && count_ok {
                    let item = self.emit();
                    // A completed sum is a leaf (momenta are >= 1):
                    // backtrack past the point just included.
                    self.backtrack();
                    return Some(item);
                }
            } else if !self.backtrack() {
                self.done = true;
                return None;
            }
        }
    }
}

/// Depth of an energy index within the sea: 1 for omega = -1 up to
/// N_t - 1 for the most negative omega, with omega = 0 deepest at N_t.
fn omega_depth(spec: LatticeSpec, omega: i32) -> u32 {
    if omega < 0 {
        (-omega) as u32
    } else {
        spec.n_t
    }
}

/// Sorted (k, depth) pairs: the canonical comparison key for
/// occupations, invariant under nothing but well-ordered under
/// everything — gauge orbits are represented by their key-minimal
/// member, and equal-action occupations are ranked by the same key.
pub(crate) fn occupation_key(spec: LatticeSpec, occ: &[(i32, u32)]) -> Vec<(u32, u32)> {
    let mut key: Vec<(u32, u32)> = occ
        .iter()
        .map(|&(omega, k)| (k, omega_depth(spec, omega)))
        .collect();
    key.sort_unstable();
    key
}

/// All distinct gauge translates of an occupation (energy indices
/// shifted cyclically), each in canonical (k, omega) order, listed in
/// ascending shift order.
pub fn gauge_orbit(spec: LatticeSpec, occ: &[(i32, u32)]) -> Vec<Vec<(i32, u32)>> {
    let mut orbit: Vec<Vec<(i32, u32)>> = Vec::new();
    for shift in 0..spec.n_t as i32 {
        let mut translated: Vec<(i32, u32)> = occ
            .iter()
            .map(|&(omega, k)| (spec.wrap_omega(omega + shift), k))
            .collect();
        translated.sort_by_key(|&(omega, k)| (k, omega));
        if !orbit.contains(&translated) {
            orbit.push(translated);
        }
    }
    orbit
}

/// The canonical representative of an occupation's gauge orbit: the
/// translate whose sorted (k, depth) key is smallest, where depth(-d)
/// = d and depth(0) = N_t. This prefers occupations hugging the top
/// of the sea (omega = -1, -2, ...), which is also how winning
/// configurations are conventionally reported.
pub fn gauge_representative(spec: LatticeSpec, occ: &[(i32, u32)]) -> Vec<(i32, u32)> {
    gauge_orbit(spec, occ)
        .into_iter()
        .min_by_key(|member| occupation_key(spec, member))
        .expect("orbit is non-empty")
}

/// Exhaustive constrained search: enumerate all occupations with the
/// given trace target (and optional exact particle count), quotient by
/// gauge equivalence, locally minimize one representative per orbit,
/// and return the best optimum plus a ranked table of every
/// occupation.
///
/// Ranking: branches are ordered by best action value ascending, with
/// values within [`OCCUPATION_TIE_TOL`] (relative) treated as tied and
/// ordered by the canonical occupation key; each orbit's members
/// follow their representative's rank. Per-branch non-convergence is
/// recorded in the table, not fatal.
pub fn global_minimize(
    spec: LatticeSpec,
    f_loc: u32,
    n_particles: Option<u32>,
    settings: &OptimizerSettings,
) -> Result<MinimizationResult> {
    settings.validate()?;
    if f_loc == 0 {
        return Err(Error::TrivialSystem);
    }
    if n_particles == Some(0) {
        return Err(Error::InvalidArgument(
            "particle count must be positive when given".into(),
        ));
    }

    // Group occupations into gauge orbits keyed by their
    // representative's canonical key.
    struct Orbit {
        representative: Vec<(i32, u32)>,
        members: Vec<Vec<(i32, u32)>>,
    }
    let mut orbits: BTreeMap<Vec<(u32, u32)>, Orbit> = BTreeMap::new();
    for occ in enumerate_occupations(spec, f_loc, n_particles) {
        let representative = gauge_representative(spec, &occ);
        let key = occupation_key(spec, &representative);
        orbits
            .entry(key)
            .or_insert_with(|| Orbit {
                representative,
                members: Vec::new(),
            })
            .members
            .push(occ);
    }
    if orbits.is_empty() {
        let particles = n_particles
            .map(|n| format!(" with exactly {n} particles"))
            .unwrap_or_default();
        return Err(Error::Infeasible(format!(
            "no occupation of the {}x{} dual lattice reaches f_loc = {f_loc}{particles}",
            spec.n_t, spec.n_r
        )));
    }

    // Optimize one representative per orbit (deterministic order and
    // per-branch seeds).
    struct BranchResult {
        orbit: Orbit,
        result: MinimizationResult,
    }
    let mut results: Vec<BranchResult> = Vec::with_capacity(orbits.len());
    let mut total_evals: u64 = 0;
    for (index, (_, orbit)) in orbits.into_iter().enumerate() {
        let states = orbit
            .representative
            .iter()
            .map(|&(omega, k)| OccupiedState {
                omega,
                k,
                phi: 1.0,
                tau: 0.0,
            })
            .collect();
        let config = Configuration::new(spec, Mode::Strict, states)?;
        let branch_settings = OptimizerSettings {
            seed: settings.seed.wrapping_add(index as u64),
            ..*settings
        };
        let result = minimize_tau(&config, &branch_settings)?;
        total_evals += result.n_evals;
        results.push(BranchResult { orbit, result });
    }

    // Sort orbits by action value and group near-equal values so the
    // canonical key decides ranking inside a tie.
    results.sort_by(|a, b| {
        a.result
            .action_value
            .total_cmp(&b.result.action_value)
            .then_with(|| {
                occupation_key(spec, &a.orbit.representative)
                    .cmp(&occupation_key(spec, &b.orbit.representative))
            })
    });
    let mut rank_of: Vec<usize> = vec![0; results.len()];
    let mut group_min = results[0].result.action_value;
    let mut group = 0usize;
    for (i, br) in results.iter().enumerate() {
        let value = br.result.action_value;
        if value > group_min + OCCUPATION_TIE_TOL * group_min.abs().max(1.0) {
            group += 1;
            group_min = value;
        }
        rank_of[i] = group;
    }
    let mut order: Vec<usize> = (0..results.len()).collect();
    order.sort_by(|&a, &b| {
        rank_of[a].cmp(&rank_of[b]).then_with(|| {
            occupation_key(spec, &results[a].orbit.representative)
                .cmp(&occupation_key(spec, &results[b].orbit.representative))
        })
    });

    let mut branches = Vec::new();
    for &idx in &order {
        let br = &results[idx];
        let mut members = br.orbit.members.clone();
        members.sort_by_key(|m| occupation_key(spec, m));
        for member in members {
            branches.push(BranchRecord {
                occupation: member,
                action_value: br.result.action_value,
                converged: br.result.converged,
                representative: br.orbit.representative.clone(),
            });
        }
    }

    let winner = &results[order[0]];
    Ok(MinimizationResult {
        config: winner.result.config.clone(),
        action_value: winner.result.action_value,
        n_evals: total_evals,
        converged: winner.result.converged,
        starts_log: winner.result.starts_log.clone(),
        branches,
    })
}

/// Finite-difference stationarity report from [`check_local_minimum`].
#[derive(Clone, Debug)]
pub struct LocalMinReport {
    /// Verdict: gradient below threshold and Hessian not indefinite.
    pub is_local_minimum: bool,
    /// Action at the probed point.
    pub action_value: f64,
    /// Central-difference gradient with respect to all tau.
    pub gradient: Vec<f64>,
    /// Max-norm of the gradient.
    pub gradient_norm_inf: f64,
    /// Acceptance threshold 10 h^2 max(1, |S|).
    pub gradient_threshold: f64,
    /// Central-difference Hessian.
    pub hessian: Vec<Vec<f64>>,
    /// Smallest Hessian eigenvalue.
    pub hessian_min_eigenvalue: f64,
}

/// Probe whether the configuration sits at a local minimum of the
/// action in tau: the central finite-difference gradient (step `h`)
/// must satisfy |grad|_inf <= 10 h^2 max(1, |S|) and the smallest
/// eigenvalue of the finite-difference Hessian must stay above
/// [`HESSIAN_EIG_FLOOR`].
pub fn check_local_minimum(config: &Configuration, h: f64) -> Result<LocalMinReport> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "finite-difference step must be positive, got {h}"
        )));
    }
    let p = config.states().len();
    if p == 0 {
        return Err(Error::InvalidArgument(
            "cannot probe an empty configuration".into(),
        ));
    }
    let base = config.taus();
    let eval = |taus: &[f64]| -> Result<f64> { action_total(&config.with_taus(taus)?) };
    let shifted = |deltas: &[(usize, f64)]| -> Vec<f64> {
        let mut taus = base.clone();
        for &(i, d) in deltas {
            taus[i] += d;
        }
        taus
    };

    let s0 = eval(&base)?;
    let scale = s0.abs().max(1.0);

    let mut gradient = vec![0.0; p];
    for i in 0..p {
        let plus = eval(&shifted(&[(i, h)]))?;
        let minus = eval(&shifted(&[(i, -h)]))?;
        gradient[i] = (plus - minus) / (2.0 * h);
    }

    let mut hessian = vec![vec![0.0; p]; p];
    for i in 0..p {
        let plus = eval(&shifted(&[(i, h)]))?;
        let minus = eval(&shifted(&[(i, -h)]))?;
        hessian[i][i] = (plus - 2.0 * s0 + minus) / (h * h);
        for j in (i + 1)..p {
            let pp = eval(&shifted(&[(i, h), (j, h)]))?;
            let pm = eval(&shifted(&[(i, h), (j, -h)]))?;
            let mp = eval(&shifted(&[(i, -h), (j, h)]))?;
            let mm = eval(&shifted(&[(i, -h), (j, -h)]))?;
            let value = (pp - pm - mp + mm) / (4.0 * h * h);
            hessian[i][j] = value;
            hessian[j][i] = value;
        }
    }

    let gradient_norm_inf = gradient.iter().fold(0.0f64, |m, g| m.max(g.abs()));
    let gradient_threshold = 10.0 * h * h * scale;
    let hessian_min_eigenvalue = symmetric_min_eigenvalue(hessian.clone());
    Ok(LocalMinReport {
        is_local_minimum: gradient_norm_inf <= gradient_threshold
            && hessian_min_eigenvalue >= HESSIAN_EIG_FLOOR,
        action_value: s0,
        gradient,
        gradient_norm_inf,
        gradient_threshold,
        hessian,
        hessian_min_eigenvalue,
    })
}

/// Smallest eigenvalue of a small symmetric matrix via cyclic Jacobi
/// rotations.
fn symmetric_min_eigenvalue(mut a: Vec<Vec<f64>>) -> f64 {
    let n = a.len();
    if n == 1 {
        return a[0][0];
    }
    for _sweep in 0..64 {
        let mut off: f64 = 0.0;
        let mut diag: f64 = 0.0;
        for i in 0..n {
            diag = diag.max(a[i][i].abs());
            for j in (i + 1)..n {
                off = off.max(a[i][j].abs());
            }
        }
        if off <= 1e-14 * (1.0 + diag) {
            break;
        }
        for pi in 0..n - 1 {
            for qi in pi + 1..n {
                let apq = a[pi][qi];
                if apq == 0.0 {
                    continue;
                }
                let theta = 0.5 * (2.0 * apq).atan2(a[qi][qi] - a[pi][pi]);
                let (s, c) = theta.sin_cos();
                for i in 0..n {
                    let aip = a[i][pi];
                    let aiq = a[i][qi];
                    a[i][pi] = c * aip - s * aiq;
                    a[i][qi] = s * aip + c * aiq;
                }
                for i in 0..n {
                    let api = a[pi][i];
                    let aqi = a[qi][i];
                    a[pi][i] = c * api - s * aqi;
                    a[qi][i] = s * api + c * aqi;
                }
            }
        }
    }
    (0..n).map(|i| a[i][i]).fold(f64::INFINITY, f64::min)
}
