//! Command-line interface.
//!
//! Subcommands:
//!
//! * `eval` — evaluate the action of a configuration file; print `S =
//!   <total>` and optionally write the per-point CSV report.
//! * `minimize` — local multi-start minimization at fixed occupation.
//! * `search` — exhaustive occupation search plus local minimization.
//! * `scan` — tabulate the action over a two-parameter tau grid.
//! * `sea` — generate a discretized Dirac-sea configuration.
//! * `check` — run the invariant suite (parity, gauge, causal
//!   consistency, origin closed form) against a configuration.
//!
//! Exit codes: 0 on success, 1 on constraint or feasibility violations
//! (including failed checks), 2 on malformed input.

use crate::action::{action, origin_lagrangian_closed_form, CausalClass};
use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::lattice::LatticeSpec;
use crate::optimize::{global_minimize, minimize_tau, MinimizationResult, OptimizerSettings};
use crate::scan::scan_landscape;
use crate::sea::{dirac_sea_config, SeaParams};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "fermisea",
    version,
    about = "Causal variational action on a 2D lattice: evaluate, minimize, scan"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate the action of a configuration
    Eval {
        /// Configuration JSON file
        #[arg(long)]
        config: PathBuf,
        /// Also write the per-point report as CSV
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Minimize the action over tau at fixed occupation
    Minimize {
        /// Configuration JSON file
        #[arg(long)]
        config: PathBuf,
        /// PRNG seed for the start schedule
        #[arg(long)]
        seed: Option<u64>,
        /// Number of starts
        #[arg(long)]
        starts: Option<u32>,
        /// Write the result JSON here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search all occupations with a given local trace
    Search {
        /// Number of time points N_t
        #[arg(long)]
        nt: u32,
        /// Number of radial points N_r
        #[arg(long)]
        nr: u32,
        /// Local trace target (sum of occupied momentum indices)
        #[arg(long)]
        floc: u32,
        /// Restrict to exactly this many particles
        #[arg(long)]
        particles: Option<u32>,
        /// PRNG seed for the start schedules
        #[arg(long)]
        seed: Option<u64>,
        /// Write the result JSON here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate the action over a (tau_i, tau_j) grid
    Scan {
        /// Configuration JSON file
        #[arg(long)]
        config: PathBuf,
        /// Index of the first varied state
        #[arg(long)]
        i: usize,
        /// Index of the second varied state
        #[arg(long)]
        j: usize,
        /// Lower edge of the scan window
        #[arg(long, allow_negative_numbers = true)]
        min: f64,
        /// Upper edge of the scan window
        #[arg(long, allow_negative_numbers = true)]
        max: f64,
        /// Subdivisions per axis (grid has (steps+1)^2 nodes)
        #[arg(long)]
        steps: u32,
        /// Output CSV file
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate a discretized Dirac-sea configuration
    Sea {
        /// Number of time points N_t
        #[arg(long)]
        nt: u32,
        /// Number of radial points N_r
        #[arg(long)]
        nr: u32,
        /// Mass parameter (0 < m < N_t - 1)
        #[arg(long)]
        mass: f64,
        /// Output configuration JSON file
        #[arg(long)]
        out: PathBuf,
    },
    /// Verify the invariant suite on a configuration
    Check {
        /// Configuration JSON file
        #[arg(long)]
        config: PathBuf,
    },
}

/// Parse arguments and run; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = err.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Eval { config, csv } => {
            let config = Configuration::read_file(&config)?;
            let report = action(&config)?;
            println!("S = {}", report.total);
            if let Some(path) = csv {
                report.write_csv_file(&path)?;
            }
            Ok(0)
        }
        Command::Minimize {
            config,
            seed,
            starts,
            out,
        } => {
            let config = Configuration::read_file(&config)?;
            let mut settings = OptimizerSettings::default();
            if let Some(seed) = seed {
                settings.seed = seed;
            }
            if let Some(starts) = starts {
                settings.n_starts = starts;
            }
            let result = minimize_tau(&config, &settings)?;
            emit_result(&result, out.as_deref())?;
            Ok(0)
        }
        Command::Search {
            nt,
            nr,
            floc,
            particles,
            seed,
            out,
        } => {
            let spec = LatticeSpec::new(nt, nr)?;
            let mut settings = OptimizerSettings::default();
            if let Some(seed) = seed {
                settings.seed = seed;
            }
            let result = global_minimize(spec, floc, particles, &settings)?;
            emit_result(&result, out.as_deref())?;
            Ok(0)
        }
        Command::Scan {
            config,
            i,
            j,
            min,
            max,
            steps,
            out,
        } => {
            let config = Configuration::read_file(&config)?;
            let grid = scan_landscape(&config, i, j, min, max, steps)?;
            grid.write_csv_file(&out)?;
            Ok(0)
        }
        Command::Sea { nt, nr, mass, out } => {
            let spec = LatticeSpec::new(nt, nr)?;
            let sea = dirac_sea_config(SeaParams::new(mass, spec)?)?;
            for omega in &sea.skipped {
                eprintln!(
                    "warning: omega = {omega} admits no momentum index in 1..={nr}; skipped"
                );
            }
            sea.config.write_file(&out)?;
            Ok(0)
        }
        Command::Check { config } => {
            let config = Configuration::read_file(&config)?;
            let mut all_pass = true;
            for (name, pass) in run_checks(&config)? {
                println!("{} {name}", if pass { "PASS" } else { "FAIL" });
                all_pass &= pass;
            }
            if all_pass {
                Ok(0)
            } else {
                Err(Error::Infeasible(
                    "one or more invariant checks failed".into(),
                ))
            }
        }
    }
}

fn emit_result(result: &MinimizationResult, out: Option<&std::path::Path>) -> Result<()> {
    let json = result.to_json();
    match out {
        Some(path) => fs::write(path, json)?,
        None => println!("{json}"),
    }
    Ok(())
}

/// The invariant suite behind `check`: named pass/fail verdicts for
/// parity invariance, gauge invariance, per-point causal consistency,
/// and the origin closed form.
pub fn run_checks(config: &Configuration) -> Result<Vec<(&'static str, bool)>> {
    const REL_TOL: f64 = 1e-10;
    let report = action(config)?;
    let s = report.total;
    let close = |a: f64, b: f64| (a - b).abs() <= REL_TOL * a.abs().max(b.abs()).max(1.0);

    // Parity: S is invariant under the global flip tau -> -tau.
    let parity = close(s, action(&config.parity_flipped())?.total);

    // Gauge: S is invariant under every cyclic energy translation.
    let mut gauge = true;
    for shift in 1..config.spec().n_t as i32 {
        gauge &= close(s, action(&config.gauge_translated(shift))?.total);
    }

    // Causal consistency: the Lagrangian is the positive part of the
    // discriminant and vanishes exactly on spacelike points.
    let mut causal = true;
    for row in &report.per_point {
        causal &= match row.causal {
            CausalClass::Timelike => row.discriminant >= 0.0 && row.lagrangian == row.discriminant,
            CausalClass::Spacelike => row.discriminant < 0.0 && row.lagrangian == 0.0,
        };
        causal &= row.weight > 0.0;
    }

    // Origin closed form: L[A(0,0)] = 4 f_loc^2 (sum k Phi cosh tau)^2.
    let origin = close(
        report.per_point[0].lagrangian,
        origin_lagrangian_closed_form(config),
    );

    Ok(vec![
        ("parity", parity),
        ("gauge", gauge),
        ("causal", causal),
        ("origin", origin),
    ])
}
