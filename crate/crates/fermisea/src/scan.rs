//! Two-parameter landscape scans.
//!
//! A scan fixes every variational parameter of a configuration except
//! two boost entries tau_i and tau_j and tabulates the action on a
//! uniform square grid over those two. The resulting grids are how
//! the double-well structure of multi-particle systems (and the
//! saddle at tau = 0 between the two parity-conjugate wells) is
//! visualized and regression-tested.

use crate::action::{action_total, parse_f64};
use crate::config::Configuration;
use crate::error::{Error, Result};
use std::fs;
use std::path::Path;

/// A tabulated action landscape over two boost parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanGrid {
    /// Index (into the canonical state order) of the first varied tau.
    pub axis_i: usize,
    /// Index of the second varied tau.
    pub axis_j: usize,
    /// Lower edge of the (square) scan window.
    pub tau_min: f64,
    /// Upper edge of the scan window.
    pub tau_max: f64,
    /// Number of subdivisions per axis; the grid holds
    /// (steps + 1)^2 nodes including both edges.
    pub steps: u32,
    /// Action values in row-major order (tau_i outer, tau_j inner).
    pub values: Vec<f64>,
}

impl ScanGrid {
    /// Node spacing along either axis.
    pub fn delta(&self) -> f64 {
        (self.tau_max - self.tau_min) / f64::from(self.steps)
    }

    /// Grid node coordinate along either axis:
    /// tau_min + index * delta.
    pub fn coordinate(&self, index: u32) -> f64 {
        self.tau_min + f64::from(index) * self.delta()
    }

    /// Value at node (row, col) = (tau_i index, tau_j index).
    pub fn value(&self, row: u32, col: u32) -> f64 {
        let n = self.steps as usize + 1;
        self.values[row as usize * n + col as usize]
    }
}

/// Tabulate the action over a square grid in (tau_i, tau_j), holding
/// all other parameters fixed at the configuration's values.
pub fn scan_landscape(
    config: &Configuration,
    axis_i: usize,
    axis_j: usize,
    tau_min: f64,
    tau_max: f64,
    steps: u32,
) -> Result<ScanGrid> {
    let p = config.states().len();
    if axis_i >= p || axis_j >= p {
        return Err(Error::InvalidArgument(format!(
            "scan axes ({axis_i}, {axis_j}) out of range for {p} states"
        )));
    }
    if axis_i == axis_j {
        return Err(Error::InvalidArgument(
            "scan axes must be distinct".into(),
        ));
    }
    if steps == 0 {
        return Err(Error::InvalidArgument("steps must be positive".into()));
    }
    if !(tau_min < tau_max) || !tau_min.is_finite() || !tau_max.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "scan window [{tau_min}, {tau_max}] is not a proper interval"
        )));
    }

    let mut grid = ScanGrid {
        axis_i,
        axis_j,
        tau_min,
        tau_max,
        steps,
        values: Vec::with_capacity((steps as usize + 1).pow(2)),
    };
    let mut taus = config.taus();
    for row in 0..=steps {
        taus[axis_i] = grid.coordinate(row);
        for col in 0..=steps {
            taus[axis_j] = grid.coordinate(col);
            grid.values
                .push(action_total(&config.with_taus(&taus)?)?);
        }
    }
    Ok(grid)
}

impl ScanGrid {
    /// Render as CSV: a comment line recording the axes and the scan
    /// window, a header, then one `tau_i,tau_j,S` row per node in
    /// row-major order. Floats carry 17 significant digits and
    /// round-trip exactly.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "# i = {}, j = {}, tau_min = {:.16e}, tau_max = {:.16e}, steps = {}\n",
            self.axis_i, self.axis_j, self.tau_min, self.tau_max, self.steps
        ));
        out.push_str("tau_i,tau_j,S\n");
        let n = self.steps + 1;
        for row in 0..n {
            let ti = self.coordinate(row);
            for col in 0..n {
                let tj = self.coordinate(col);
                out.push_str(&format!(
                    "{ti:.16e},{tj:.16e},{:.16e}\n",
                    self.value(row, col)
                ));
            }
        }
        out
    }

    /// Parse a grid back from its CSV rendering.
    pub fn from_csv(text: &str) -> Result<Self> {
        let bad = |line: &str| Error::Parse(format!("bad scan CSV line: {line:?}"));
        let mut lines = text.lines();
        let comment = lines
            .next()
            .ok_or_else(|| Error::Parse("empty scan CSV".into()))?;
        // "# i = I, j = J, tau_min = A, tau_max = B, steps = S"
        let rest = comment.strip_prefix("# ").ok_or_else(|| bad(comment))?;
        let mut axis_i = None;
        let mut axis_j = None;
        let mut tau_min = None;
        let mut tau_max = None;
        let mut steps = None;
        for field in rest.split(", ") {
            let (name, value) = field.split_once(" = ").ok_or_else(|| bad(comment))?;
            match name {
                "i" => axis_i = Some(value.parse::<usize>().map_err(|_| bad(comment))?),
                "j" => axis_j = Some(value.parse::<usize>().map_err(|_| bad(comment))?),
                "tau_min" => tau_min = Some(parse_f64(value)?),
                "tau_max" => tau_max = Some(parse_f64(value)?),
                "steps" => steps = Some(value.parse::<u32>().map_err(|_| bad(comment))?),
                _ => return Err(bad(comment)),
            }
        }
        let (axis_i, axis_j, tau_min, tau_max, steps) =
            match (axis_i, axis_j, tau_min, tau_max, steps) {
                (Some(i), Some(j), Some(lo), Some(hi), Some(s)) => (i, j, lo, hi, s),
                _ => return Err(bad(comment)),
            };
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("scan CSV missing header".into()))?;
        if header != "tau_i,tau_j,S" {
            return Err(Error::Parse(format!("bad scan CSV header: {header:?}")));
        }

        let mut values: Vec<f64> = Vec::new();
        for line in lines {
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 3 {
                return Err(bad(line));
            }
            parse_f64(fields[0])?;
            parse_f64(fields[1])?;
            values.push(parse_f64(fields[2])?);
        }
        let expected = (steps as usize + 1).pow(2);
        if values.len() != expected {
            return Err(Error::Parse(format!(
                "scan CSV has {} data rows, expected {expected}",
                values.len()
            )));
        }
        Ok(ScanGrid {
            axis_i,
            axis_j,
            tau_min,
            tau_max,
            steps,
            values,
        })
    }

    /// Write the CSV rendering to a file.
    pub fn write_csv_file(&self, path: &Path) -> Result<()> {
        Ok(fs::write(path, self.to_csv())?)
    }

    /// Read a grid from a CSV file.
    pub fn read_csv_file(path: &Path) -> Result<Self> {
        Self::from_csv(&fs::read_to_string(path)?)
    }
}
