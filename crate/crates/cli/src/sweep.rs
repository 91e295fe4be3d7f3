//! One-parameter families of runs.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use toml::{Table, Value};

use crate::config::{parse_config_with, Scenario};
use crate::error::{CliError, Result};
use crate::run::{run, RunArtifacts};

/// Reads a command-line value as a TOML literal, falling back to a bare
/// string (`gaussian` and `"gaussian"` both work).
pub fn parse_value(text: &str) -> Value {
    toml::from_str::<Table>(&format!("v = {text}"))
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| Value::String(text.to_string()))
}

/// Copy of `base` with the dotted `axis` set to `value`. The path must name a
/// field of the scenario schema.
pub fn with_axis(base: &Scenario, axis: &str, value: &Value) -> Result<Scenario> {
    let mut root = Value::try_from(base).map_err(|e| CliError::Validation {
        field: "scenario".into(),
        message: e.to_string(),
    })?;
    let keys: Vec<&str> = axis.split('.').collect();
    if keys.iter().any(|k| k.is_empty()) {
        return Err(CliError::Axis(axis.into()));
    }
    let mut node = &mut root;
    for k in &keys[..keys.len() - 1] {
        let Value::Table(t) = node else {
            return Err(CliError::Axis(axis.into()));
        };
        node = t
            .entry(k.to_string())
            .or_insert_with(|| Value::Table(Table::new()));
    }
    let Value::Table(t) = node else {
        return Err(CliError::Axis(axis.into()));
    };
    t.insert(keys[keys.len() - 1].to_string(), value.clone());
    let text = toml::to_string(&root).map_err(|e| CliError::Validation {
        field: axis.into(),
        message: e.to_string(),
    })?;
    match parse_config_with(&text, true) {
        Ok((sc, _)) => Ok(sc),
        Err(CliError::UnknownKey { .. }) => Err(CliError::Axis(axis.into())),
        Err(CliError::Parse { message, .. }) => Err(CliError::Validation {
            field: axis.into(),
            message,
        }),
        Err(e) => Err(e),
    }
}

/// Headline numbers of one swept run.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub value: String,
    pub run: String,
    pub status: String,
    pub energy: Option<f64>,
    pub energy_drift: Option<f64>,
    pub kappa: Option<f64>,
    pub growth_exponent: Option<f64>,
    pub high_norm: Option<f64>,
    pub modified_ratio_min: Option<f64>,
    pub modified_ratio_max: Option<f64>,
    pub scattering_detected: Option<bool>,
}

impl SweepRow {
    fn from_run(value: &Value, a: &RunArtifacts) -> Self {
        let r = a.report.as_ref();
        SweepRow {
            value: display(value),
            run: a.manifest.scenario.clone(),
            status: if a.ok() { "ok".into() } else { "failed".into() },
            energy: r.map(|r| r.energy.initial),
            energy_drift: r.map(|r| r.energy.max_rel_drift),
            kappa: r.and_then(|r| r.virial.as_ref()?.kappa),
            growth_exponent: r.and_then(|r| r.growth.map(|g| g.exponent)),
            high_norm: r.and_then(|r| r.split.as_ref().map(|s| s.high_norm)),
            modified_ratio_min: r.and_then(|r| r.modified_energy_ratio.map(|x| x.min)),
            modified_ratio_max: r.and_then(|r| r.modified_energy_ratio.map(|x| x.max)),
            scattering_detected: r.and_then(|r| r.scatter.as_ref().map(|s| s.scattering_detected)),
        }
    }
}

fn display(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[derive(Debug)]
pub struct SweepResult {
    pub runs: Vec<RunArtifacts>,
    pub rows: Vec<SweepRow>,
    pub summary: PathBuf,
}

/// Runs `base` once per value, concurrently, into `out_root/<name>-<i>`, and
/// writes `out_root/<name>-sweep.csv`. Every value is checked before any run
/// starts.
pub fn sweep(
    base: &Scenario,
    axis: &str,
    values: &[Value],
    out_root: &Path,
) -> Result<SweepResult> {
    let scenarios = values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut sc = with_axis(base, axis, v)?;
            sc.name = format!("{}-{i:03}", base.name);
            sc.validate()?;
            Ok(sc)
        })
        .collect::<Result<Vec<_>>>()?;
    // Resolve the axis even when there is nothing to run.
    if values.is_empty() {
        with_axis(base, axis, &probe(base, axis))?;
    }
    std::fs::create_dir_all(out_root).map_err(|e| CliError::io(out_root, e))?;
    let runs = scenarios
        .par_iter()
        .map(|sc| run(sc, out_root))
        .collect::<Result<Vec<_>>>()?;
    let rows: Vec<SweepRow> = values
        .iter()
        .zip(&runs)
        .map(|(v, a)| SweepRow::from_run(v, a))
        .collect();

    let summary = out_root.join(format!("{}-sweep.csv", base.name));
    let file = std::fs::File::create(&summary).map_err(|e| CliError::io(&summary, e))?;
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(file);
    w.write_record(header(axis))?;
    for row in &rows {
        w.serialize(row)?;
    }
    w.flush().map_err(|e| CliError::Csv(e.into()))?;
    Ok(SweepResult {
        runs,
        rows,
        summary,
    })
}

fn header(axis: &str) -> Vec<String> {
    let mut h = vec![axis.to_string()];
    h.extend(
        [
            "run",
            "status",
            "energy",
            "energy_drift",
            "kappa",
            "growth_exponent",
            "high_norm",
            "modified_ratio_min",
            "modified_ratio_max",
            "scattering_detected",
        ]
        .iter()
        .map(|s| s.to_string()),
    );
    h
}

/// The current value at `axis`, or a placeholder that only tests the path.
fn probe(base: &Scenario, axis: &str) -> Value {
    let mut node = Value::try_from(base).ok();
    for k in axis.split('.') {
        node = node.and_then(|n| n.get(k).cloned());
    }
    node.unwrap_or(Value::Float(1.0))
}
