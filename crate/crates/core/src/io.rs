//! CSV readers and writers for paths, fields and spectral dumps.
//!
//! Formats (headers included, full float precision of 17 significant
//! digits):
//!
//! * paths: `t,value`, one row per node;
//! * grid fields: `t,x,value`;
//! * spectral fields: `t,k,coeff`.

use crate::error::{Error, Result};
use crate::grid::{SampledPath, UniformGrid};
use crate::spectral::{FieldSlices, SpaceTimeField};
use std::fmt::Write as _;
use std::path::Path;

/// Format a float with 17 significant digits, enough to round-trip f64.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn path_to_csv(path: &SampledPath) -> String {
    let mut out = String::from("t,value\n");
    for (t, v) in path.grid().nodes().iter().zip(path.values()) {
        let _ = writeln!(out, "{},{}", format_float(*t), format_float(*v));
    }
    out
}

pub fn field_to_csv(field: &SpaceTimeField) -> Result<String> {
    let t_nodes = field.t_grid().nodes();
    match field.slices() {
        FieldSlices::Grid { x_grid, values } => {
            let x_nodes = x_grid.nodes();
            let mut out = String::from("t,x,value\n");
            for (i, row) in values.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    let _ = writeln!(
                        out,
                        "{},{},{}",
                        format_float(t_nodes[i]),
                        format_float(x_nodes[j]),
                        format_float(*v)
                    );
                }
            }
            Ok(out)
        }
        FieldSlices::Spectral(slices) => {
            let mut out = String::from("t,k,coeff\n");
            for (i, s) in slices.iter().enumerate() {
                for (ki, c) in s.coeffs().iter().enumerate() {
                    let _ = writeln!(
                        out,
                        "{},{},{}",
                        format_float(t_nodes[i]),
                        ki + 1,
                        format_float(*c)
                    );
                }
            }
            Ok(out)
        }
    }
}

pub fn write_path_csv(file: &Path, path: &SampledPath) -> Result<()> {
    std::fs::write(file, path_to_csv(path))
        .map_err(|e| Error::InvalidParam(format!("cannot write {}: {e}", file.display())))
}

pub fn write_field_csv(file: &Path, field: &SpaceTimeField) -> Result<()> {
    std::fs::write(file, field_to_csv(field)?)
        .map_err(|e| Error::InvalidParam(format!("cannot write {}: {e}", file.display())))
}

/// Read a `t,value` CSV back into a path, validating uniform spacing.
pub fn read_path_csv(file: &Path) -> Result<SampledPath> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Error::InvalidParam(format!("cannot read {}: {e}", file.display())))?;
    parse_path_csv(&text)
}

pub fn parse_path_csv(text: &str) -> Result<SampledPath> {
    let mut ts = Vec::new();
    let mut vs = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (lineno == 0 && line.starts_with('t')) {
            continue;
        }
        let mut parts = line.split(',');
        let t: f64 = parts
            .next()
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::InvalidParam(format!("bad t on line {}", lineno + 1)))?;
        let v: f64 = parts
            .next()
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| Error::InvalidParam(format!("bad value on line {}", lineno + 1)))?;
        ts.push(t);
        vs.push(v);
    }
    if ts.len() < 3 {
        return Err(Error::InvalidParam(
            "path CSV needs at least 3 rows".to_string(),
        ));
    }
    let n = ts.len() - 1;
    let grid = UniformGrid::new(ts[0], ts[n], n)?;
    let h = grid.step();
    for (i, &t) in ts.iter().enumerate() {
        if (t - grid.node(i)).abs() > 1e-9 * (1.0 + h) {
            return Err(Error::InvalidParam(format!(
                "node {i} at t = {t} is not uniformly spaced"
            )));
        }
    }
    SampledPath::new(grid, vs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_csv_round_trips_bit_exactly() {
        let grid = UniformGrid::new(0.0, 2.0, 64).unwrap();
        let p = SampledPath::from_fn(grid, |t| (t * 3.1).sin() / 7.0).unwrap();
        let text = path_to_csv(&p);
        let q = parse_path_csv(&text).unwrap();
        assert_eq!(p.values(), q.values());
        assert_eq!(p.grid(), q.grid());
    }

    #[test]
    fn malformed_csv_is_rejected() {
        assert!(parse_path_csv("t,value\n0.0,1.0\nnot,a,row\n").is_err());
        assert!(parse_path_csv("t,value\n0.0,1.0\n").is_err());
    }
}
