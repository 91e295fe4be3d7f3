//! Per-stride diagnostics table.

use std::io::Write;
use std::path::Path;

use nlw_core::monitors::DiagnosticsRecord;

use crate::error::{CliError, Result};

/// Bumped whenever the column set changes.
pub const CSV_SCHEMA_VERSION: u32 = 1;

pub fn columns(radius: f64) -> Vec<String> {
    let mut c: Vec<String> = ["t", "E", "Ev", "M1", "M2", "M3", "E_mod", "weighted_l4"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    c.push(format!("local_mass_R{radius}"));
    c.push(format!("local_energy_R{radius}"));
    c.extend(
        ["hs_half_u", "hs_half_ut", "w_l4", "w_l6"]
            .iter()
            .map(|s| s.to_string()),
    );
    c
}

fn row(r: &DiagnosticsRecord<f64>) -> Vec<String> {
    let f = |x: f64| format!("{x:e}");
    let o = |x: Option<f64>| x.map(f).unwrap_or_default();
    vec![
        f(r.t),
        f(r.energy),
        f(r.energy_v),
        f(r.m1),
        f(r.m2),
        f(r.m3),
        f(r.modified_energy),
        f(r.weighted_l4),
        f(r.local_mass),
        f(r.local_energy),
        f(r.hs_half_u),
        f(r.hs_half_ut),
        o(r.w_l4),
        o(r.w_l6),
    ]
}

/// Floats are written in shortest round-trip form, so equal records give
/// byte-identical files.
pub fn write_csv<W: Write>(out: W, radius: f64, records: &[DiagnosticsRecord<f64>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(columns(radius))?;
    for r in records {
        w.write_record(row(r))?;
    }
    w.flush().map_err(|e| CliError::Csv(e.into()))?;
    Ok(())
}

pub fn write_file(path: &Path, radius: f64, records: &[DiagnosticsRecord<f64>]) -> Result<()> {
    let f = std::fs::File::create(path).map_err(|e| CliError::io(path, e))?;
    write_csv(std::io::BufWriter::new(f), radius, records)
}

/// Reads the numeric columns back (empty cells become NaN).
pub fn read_file(path: &Path) -> Result<(Vec<String>, Vec<Vec<f64>>)> {
    let mut r = csv::Reader::from_path(path)?;
    let header = r.headers()?.iter().map(|s| s.to_string()).collect();
    let mut rows = Vec::new();
    for rec in r.records() {
        rows.push(rec?.iter().map(|s| s.parse().unwrap_or(f64::NAN)).collect());
    }
    Ok((header, rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_names_the_radius() {
        let c = columns(1.0);
        assert_eq!(c.len(), 14);
        assert_eq!(c[8], "local_mass_R1");
        assert_eq!(c[9], "local_energy_R1");
    }

    #[test]
    fn rows_round_trip() {
        let rec = DiagnosticsRecord {
            t: 0.1,
            energy: 3.127062114540489,
            energy_v: 1.0 / 3.0,
            m1: -1e-300,
            m2: 0.0,
            m3: 2.5,
            modified_energy: 3.0,
            weighted_l4: std::f64::consts::FRAC_PI_2,
            local_mass: 0.25,
            local_energy: 0.5,
            hs_half_u: 1.7724538509055159,
            hs_half_ut: 0.0,
            w_l4: None,
            w_l6: Some(1e-3),
        };
        let mut buf = Vec::new();
        write_csv(&mut buf, 1.0, &[rec]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let line = text.lines().nth(1).unwrap();
        let cells: Vec<&str> = line.split(',').collect();
        assert_eq!(cells[1].parse::<f64>().unwrap(), rec.energy);
        assert_eq!(cells[2].parse::<f64>().unwrap(), rec.energy_v);
        assert_eq!(cells[12], "");
        assert_eq!(cells[13].parse::<f64>().unwrap(), 1e-3);
    }
}
