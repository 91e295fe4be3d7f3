//! One scenario from data to artifacts.

use std::path::{Path, PathBuf};
use std::time::Instant;

use nlw_core::linear_prop::{Trajectory, TrajectoryMeta};
use nlw_core::monitors::{
    bound_ratios, growth_fit, virial_residual, BoundReport, DiagnosticsRecord, GrowthFit,
    IdentityReport,
};
use nlw_core::nlw_solver::{evolve, evolve_coupled, split_initial_data, SplitReport};
use nlw_core::radial_field::FieldState;
use nlw_core::scattering::ScatterReport;
use serde::Serialize;

use crate::checkpoint;
use crate::config::Scenario;
use crate::data::initial_data;
use crate::diagnostics;
use crate::error::{CliError, Result};
use crate::manifest::{Design, Manifest, Status};
use crate::post::{
    checkpoint_name, hyperbolic_checks, scatter_checks, write_json, HyperbolicSummary,
};

#[derive(Debug, Clone, Serialize)]
pub struct EnergySummary {
    pub initial: f64,
    pub last: f64,
    pub max_rel_drift: f64,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Range {
    pub min: f64,
    pub max: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub energy: EnergySummary,
    pub virial: Option<IdentityReport>,
    pub bounds: Option<BoundReport>,
    /// `E_mod / E(v)` over all recorded times with nonzero `E(v)`.
    pub modified_energy_ratio: Option<Range>,
    pub growth: Option<GrowthFit>,
    pub split: Option<SplitReport>,
    /// `sup_t ‖(v + w) − u‖_{L²} / ‖u‖_{L²}` against a direct run.
    pub reconstruction_defect: Option<f64>,
    pub hyperbolic: Option<HyperbolicSummary>,
    pub scatter: Option<ScatterReport>,
    /// Why optional sections are missing.
    pub notes: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct RunArtifacts {
    pub dir: PathBuf,
    pub manifest: Manifest,
    pub report: Option<RunReport>,
}

impl RunArtifacts {
    pub fn ok(&self) -> bool {
        self.manifest.status == Status::Ok
    }
}

fn energy_summary(records: &[DiagnosticsRecord<f64>]) -> EnergySummary {
    let e0 = records.first().map_or(0.0, |r| r.energy);
    let max_rel_drift = if e0 == 0.0 {
        0.0
    } else {
        records
            .iter()
            .fold(0.0f64, |m, r| m.max(((r.energy - e0) / e0).abs()))
    };
    EnergySummary {
        initial: e0,
        last: records.last().map_or(0.0, |r| r.energy),
        max_rel_drift,
    }
}

fn ratio_range(records: &[DiagnosticsRecord<f64>]) -> Option<Range> {
    let ratios: Vec<f64> = records
        .iter()
        .filter(|r| r.energy_v != 0.0)
        .map(|r| r.modified_energy / r.energy_v)
        .collect();
    if ratios.is_empty() {
        return None;
    }
    Some(Range {
        min: ratios.iter().copied().fold(f64::INFINITY, f64::min),
        max: ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    })
}

fn sum_trajectory(v: &Trajectory<f64>, w: &Trajectory<f64>) -> Result<Trajectory<f64>> {
    let states = v
        .states()
        .iter()
        .zip(w.states())
        .map(|(a, b)| a.try_add(b))
        .collect::<nlw_core::Result<Vec<_>>>()?;
    let meta = TrajectoryMeta {
        label: "u".into(),
        ..v.meta().clone()
    };
    Ok(Trajectory::new(states, meta)?)
}

fn reconstruction_defect(u: &Trajectory<f64>, direct: &Trajectory<f64>) -> Result<f64> {
    let mut worst = 0.0f64;
    for (a, b) in u.states().iter().zip(direct.states()) {
        let d = a.u.try_sub(&b.u)?.l2_norm();
        let n = b.u.l2_norm();
        worst = worst.max(if n == 0.0 { d } else { d / n });
    }
    Ok(worst)
}

struct Evolved {
    u: Trajectory<f64>,
    parts: Option<(Trajectory<f64>, Trajectory<f64>)>,
    records: Vec<DiagnosticsRecord<f64>>,
    split: Option<SplitReport>,
    data: FieldState<f64>,
}

fn integrate(sc: &Scenario) -> Result<Evolved> {
    let grid = sc.grid()?;
    let data = initial_data(grid, &sc.data, sc.seed);
    let solver = sc.solver_config();
    let mcfg = sc.monitor_config();
    match sc.split_config() {
        Some(split) => {
            let (v0, w0, rep) = split_initial_data(&data, &split)?;
            let (v, w) = evolve_coupled(&v0, &w0, &solver, &mcfg)?;
            let records = v.records().to_vec();
            let u = sum_trajectory(&v, &w)?;
            Ok(Evolved {
                u,
                parts: Some((v, w)),
                records,
                split: Some(rep),
                data,
            })
        }
        None => {
            let u = evolve(&data, &solver, &mcfg)?;
            let records = u.records().to_vec();
            Ok(Evolved {
                u,
                parts: None,
                records,
                split: None,
                data,
            })
        }
    }
}

fn write_checkpoints(dir: &Path, sc: &Scenario, ev: &Evolved) -> Result<usize> {
    if !sc.output.checkpoints {
        return Ok(0);
    }
    let cdir = dir.join("checkpoints");
    std::fs::create_dir_all(&cdir).map_err(|e| CliError::io(&cdir, e))?;
    let every = sc.output.checkpoint_every;
    let last = ev.u.len() - 1;
    let keep = |i: usize| i.is_multiple_of(every) || i == last;
    let mut count = 0;
    let mut series = vec![("u", &ev.u)];
    if let Some((v, w)) = &ev.parts {
        series.push(("v", v));
        series.push(("w", w));
    }
    for (prefix, traj) in series {
        for (i, st) in traj.states().iter().enumerate().filter(|(i, _)| keep(*i)) {
            checkpoint::write(&cdir.join(checkpoint_name(prefix, i)), st)?;
            count += 1;
        }
    }
    Ok(count)
}

fn analyse(sc: &Scenario, ev: &Evolved) -> Result<RunReport> {
    let mcfg = sc.monitor_config();
    let mut notes = Vec::new();
    let mut note = |what: &str, e: &dyn std::fmt::Display| notes.push(format!("{what}: {e}"));

    let window = (
        ev.u.t_start().expect("nonempty"),
        ev.u.t_end().expect("nonempty"),
    );
    let virial = virial_residual(&ev.u, window, &mcfg)
        .map_err(|e| note("virial", &e))
        .ok();
    let bounds = bound_ratios(&ev.u, &mcfg)
        .map_err(|e| note("bounds", &e))
        .ok();
    let growth = growth_fit(&ev.records).map_err(|e| note("growth", &e)).ok();

    let reconstruction_defect = match &sc.split {
        Some(s) if s.compare_direct => {
            let direct = evolve(&ev.data, &sc.solver_config(), &mcfg)?;
            Some(reconstruction_defect(&ev.u, &direct)?)
        }
        _ => None,
    };
    let hyperbolic = match &sc.hyperbolic {
        Some(h) => Some(hyperbolic_checks(&ev.u, h)?),
        None => None,
    };
    let scatter = match &sc.scatter {
        Some(_) => Some(scatter_checks(&ev.u, sc)?),
        None => None,
    };
    Ok(RunReport {
        energy: energy_summary(&ev.records),
        virial,
        bounds,
        modified_energy_ratio: ratio_range(&ev.records),
        growth,
        split: ev.split.clone(),
        reconstruction_defect,
        hyperbolic,
        scatter,
        notes,
    })
}

fn execute(sc: &Scenario, dir: &Path, manifest: &mut Manifest) -> Result<RunReport> {
    let ev = integrate(sc)?;
    let csv = dir.join("diagnostics.csv");
    diagnostics::write_file(&csv, sc.monitors.radius, &ev.records)?;
    manifest.artifacts.push("diagnostics.csv".into());
    manifest.checkpoints.count = write_checkpoints(dir, sc, &ev)?;
    if manifest.checkpoints.count > 0 {
        manifest.artifacts.push("checkpoints/".into());
    }
    let report = analyse(sc, &ev)?;
    manifest.design = Design::for_scenario(sc, report.virial.as_ref().and_then(|v| v.kappa));
    write_json(&dir.join("report.json"), &report)?;
    manifest.artifacts.push("report.json".into());
    Ok(report)
}

/// Runs `sc` into `out_root/<name>`. Invalid scenarios are rejected up front;
/// failures after that are recorded in the manifest with `status = failed`.
pub fn run(sc: &Scenario, out_root: &Path) -> Result<RunArtifacts> {
    sc.validate()?;
    let start = Instant::now();
    let dir = out_root.join(&sc.name);
    std::fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
    let cfg = dir.join("config.toml");
    std::fs::write(&cfg, sc.canonical()).map_err(|e| CliError::io(&cfg, e))?;

    let mut manifest = Manifest::new(sc);
    manifest.artifacts.push("config.toml".into());
    let report = match execute(sc, &dir, &mut manifest) {
        Ok(r) => Some(r),
        Err(e) => {
            manifest.fail(&e);
            None
        }
    };
    manifest.artifacts.push("manifest.json".into());
    manifest.wall_seconds = start.elapsed().as_secs_f64();
    manifest.write(&dir.join("manifest.json"))?;
    Ok(RunArtifacts {
        dir,
        manifest,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(t: f64, e: f64) -> DiagnosticsRecord<f64> {
        DiagnosticsRecord {
            t,
            energy: e,
            energy_v: e,
            m1: 0.0,
            m2: 0.0,
            m3: 0.0,
            modified_energy: e,
            weighted_l4: 0.0,
            local_mass: 0.0,
            local_energy: 0.0,
            hs_half_u: 0.0,
            hs_half_ut: 0.0,
            w_l4: None,
            w_l6: None,
        }
    }

    #[test]
    fn drift_is_relative_to_the_first_record() {
        let s = energy_summary(&[record(0.0, 2.0), record(1.0, 2.2), record(2.0, 1.9)]);
        assert!((s.max_rel_drift - 0.1).abs() < 1e-12);
        assert_eq!(s.last, 1.9);
    }

    #[test]
    fn zero_energy_has_no_drift_or_ratio() {
        let r = [record(0.0, 0.0), record(1.0, 0.0)];
        assert_eq!(energy_summary(&r).max_rel_drift, 0.0);
        assert!(ratio_range(&r).is_none());
    }
}
