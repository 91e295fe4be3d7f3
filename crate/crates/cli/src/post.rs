//! Checks that work on a stored trajectory, either right after a run or
//! later from a run directory.

use std::path::{Path, PathBuf};

use nlw_core::hyperbolic::{
    change_of_variables_check, evolve_hyperbolic, to_hyperbolic_with, ChangeOfVariables,
    HyperbolicConfig, HyperbolicFrame, HyperbolicGrid, HyperbolicState,
};
use nlw_core::linear_prop::{Trajectory, TrajectoryMeta};
use nlw_core::monitors::{DiagnosticsRecord, Monitor};
use nlw_core::radial_field::FieldState;
use nlw_core::scattering::{l4_accumulation_with, ScatterReport};
use serde::Serialize;

use crate::checkpoint;
use crate::config::{load_config, HyperbolicSection, Scenario};
use crate::diagnostics;
use crate::error::{CliError, Result};

#[derive(Debug, Clone, Serialize)]
pub struct HyperbolicSummary {
    pub s_max: f64,
    pub m: usize,
    pub dt_tau: f64,
    pub tau_end: f64,
    /// Relative energy drift of the native evolution over `[0, tau_end]`.
    pub drift: f64,
    /// Relative L² gap at `tau_end` between the native state and the
    /// trajectory sampled on the same hyperboloid.
    pub two_route_rel_l2: f64,
    pub change_of_variables: ChangeOfVariables,
    /// Native run continued on a zero-padded grid.
    pub padded: Option<PaddedRun>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PaddedRun {
    pub m: usize,
    pub s_max: f64,
    pub tau_end: f64,
    pub drift: f64,
}

fn rel_l2(a: &[f64], b: &[f64]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
    let den: f64 = b.iter().map(|y| y * y).sum();
    if den == 0.0 {
        num.sqrt()
    } else {
        (num / den).sqrt()
    }
}

fn native_config(
    h: &HyperbolicSection,
    grid: &HyperbolicGrid<f64>,
    tau_end: f64,
    mu: f64,
) -> HyperbolicConfig<f64> {
    HyperbolicConfig {
        tau_end,
        dt_tau: h.dt_tau.unwrap_or(grid.ds() / 4.0),
        output_stride: h.output_stride,
        nonlinearity: mu,
    }
}

/// Samples the data hyperboloid, evolves natively and compares both routes.
pub fn hyperbolic_checks(
    traj: &Trajectory<f64>,
    h: &HyperbolicSection,
) -> Result<HyperbolicSummary> {
    let mu = traj.meta().nonlinearity;
    let frame = HyperbolicFrame::anchored(h.t_data, h.t0);
    let grid = HyperbolicGrid::new(h.s_max, h.m)?;
    let cfg = native_config(h, &grid, h.tau_end, mu);
    cfg.validate(&grid)?;
    let data = to_hyperbolic_with(traj, &grid, &frame, 0.0, h.interpolation)?;
    let htraj = evolve_hyperbolic(&data, &cfg)?;
    let end = htraj.states().last().expect("nonempty").tau;
    let sampled = to_hyperbolic_with(traj, &grid, &frame, end, h.interpolation)?;
    let native = htraj.state_near(end);
    let two_route_rel_l2 = rel_l2(native.v(), sampled.v());
    let change_of_variables = change_of_variables_check(traj, &htraj, &frame)?;

    let padded = match h.pad_m {
        Some(pm) => Some(padded_run(&data, h, pm, mu)?),
        None => None,
    };
    Ok(HyperbolicSummary {
        s_max: h.s_max,
        m: h.m,
        dt_tau: cfg.dt_tau,
        tau_end: end,
        drift: htraj.relative_energy_drift(),
        two_route_rel_l2,
        change_of_variables,
        padded,
    })
}

fn padded_run(
    data: &HyperbolicState<f64>,
    h: &HyperbolicSection,
    pad_m: usize,
    mu: f64,
) -> Result<PaddedRun> {
    let ds = data.grid().ds();
    let grid = HyperbolicGrid::new(ds * (pad_m as f64 + 1.0), pad_m)?;
    let start = data.zero_padded(grid)?;
    let cfg = native_config(h, data.grid(), h.pad_tau_end, mu);
    let htraj = evolve_hyperbolic(&start, &cfg)?;
    Ok(PaddedRun {
        m: pad_m,
        s_max: grid.s_max(),
        tau_end: htraj.states().last().expect("nonempty").tau,
        drift: htraj.relative_energy_drift(),
    })
}

pub fn scatter_checks(traj: &Trajectory<f64>, sc: &Scenario) -> Result<ScatterReport> {
    Ok(l4_accumulation_with(traj, &sc.scatter_config())?)
}

/// Checkpointed trajectories of a finished run.
pub struct StoredRun {
    pub scenario: Scenario,
    /// The full solution.
    pub u: Trajectory<f64>,
    /// `(v, w)` for coupled runs.
    pub parts: Option<(Trajectory<f64>, Trajectory<f64>)>,
}

pub fn checkpoint_name(prefix: &str, index: usize) -> String {
    format!("{prefix}_{index:06}.rnlw")
}

fn read_series(dir: &Path, prefix: &str) -> Result<Vec<FieldState<f64>>> {
    let cdir = dir.join("checkpoints");
    let entries = std::fs::read_dir(&cdir).map_err(|e| CliError::io(&cdir, e))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.file_name()
                .and_then(|n| n.to_str())
                .is_some_and(|n| n.starts_with(&format!("{prefix}_")) && n.ends_with(".rnlw"))
        })
        .collect();
    paths.sort();
    paths.iter().map(|p| checkpoint::read(p)).collect()
}

pub fn load_run(dir: &Path) -> Result<StoredRun> {
    let (scenario, _) = load_config(&dir.join("config.toml"), true)?;
    let meta = |label: &str| TrajectoryMeta {
        label: label.into(),
        dt: scenario.solver.dt,
        output_stride: scenario.solver.output_stride * scenario.output.checkpoint_every,
        nonlinearity: scenario.solver.nonlinearity,
    };
    let states = read_series(dir, "u")?;
    if states.is_empty() {
        return Err(CliError::Checkpoint {
            path: dir.join("checkpoints"),
            message: "no checkpoints found".into(),
        });
    }
    let u = Trajectory::new(states, meta("u"))?;
    let parts = if scenario.split.is_some() {
        let v = Trajectory::new(read_series(dir, "v")?, meta("coupled_v"))?;
        let w = Trajectory::new(read_series(dir, "w")?, meta("coupled_w"))?;
        Some((v, w))
    } else {
        None
    };
    Ok(StoredRun { scenario, u, parts })
}

#[derive(Debug, Clone, Serialize)]
pub struct DiagnoseSummary {
    pub records: usize,
    /// Largest absolute difference to the matching rows of the run's own
    /// diagnostics table.
    pub max_abs_diff: f64,
    pub output: PathBuf,
}

/// Recomputes the monitors from checkpoints into `diagnostics_recomputed.csv`.
pub fn diagnose(dir: &Path) -> Result<DiagnoseSummary> {
    let run = load_run(dir)?;
    let mcfg = run.scenario.monitor_config();
    let mon = Monitor::new(*run.u.grid().expect("nonempty"), mcfg)?;
    let records: Vec<DiagnosticsRecord<f64>> = match &run.parts {
        Some((v, w)) => v
            .states()
            .iter()
            .zip(w.states())
            .map(|(v, w)| mon.record(v, Some(w)))
            .collect(),
        None => run.u.states().iter().map(|s| mon.record(s, None)).collect(),
    };
    let output = dir.join("diagnostics_recomputed.csv");
    diagnostics::write_file(&output, mcfg.radius, &records)?;

    let (_, stored) = diagnostics::read_file(&dir.join("diagnostics.csv"))?;
    let (_, fresh) = diagnostics::read_file(&output)?;
    let mut max_abs_diff = 0.0f64;
    for row in &fresh {
        if let Some(old) = stored.iter().find(|o| o[0] == row[0]) {
            for (a, b) in row.iter().zip(old) {
                if a.is_finite() && b.is_finite() {
                    max_abs_diff = max_abs_diff.max((a - b).abs());
                }
            }
        }
    }
    Ok(DiagnoseSummary {
        records: records.len(),
        max_abs_diff,
        output,
    })
}

pub(crate) fn write_json<S: Serialize>(path: &Path, value: &S) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text + "\n").map_err(|e| CliError::io(path, e))
}

/// Runs the hyperbolic checks on a stored run and writes `hyperbolic.json`.
pub fn hyperbolic(dir: &Path) -> Result<HyperbolicSummary> {
    let run = load_run(dir)?;
    let h = run.scenario.hyperbolic.clone().unwrap_or_default();
    let s = hyperbolic_checks(&run.u, &h)?;
    write_json(&dir.join("hyperbolic.json"), &s)?;
    Ok(s)
}

/// Runs the scattering diagnostics on a stored run and writes `scatter.json`.
pub fn scatter(dir: &Path) -> Result<ScatterReport> {
    let run = load_run(dir)?;
    let s = scatter_checks(&run.u, &run.scenario)?;
    write_json(&dir.join("scatter.json"), &s)?;
    Ok(s)
}
