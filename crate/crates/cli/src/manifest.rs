//! Run manifests: what was run, how, and whether it finished.

use std::path::Path;

use nlw_core::hyperbolic::{Interpolation, CHAIN_RULE_FORMULA, WEIGHT_SERIES_CUTOFF};
use nlw_core::monitors::{GROWTH_MIN_SAMPLES, VIRIAL_ABS_TOL, VIRIAL_REL_TOL};
use nlw_core::nlw_solver::SUPPORT_REL_TOL;
use nlw_core::radial_field::BumpProfile;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::checkpoint::{FORMAT_VERSION, MAGIC};
use crate::config::{DataFamily, Scenario, SolverSection};
use crate::diagnostics::{columns, CSV_SCHEMA_VERSION};
use crate::error::{CliError, ErrorRecord, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Failed,
}

#[derive(Debug, Clone, Serialize)]
pub struct GridInfo {
    pub r_max: f64,
    pub n: usize,
    pub dr: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CsvInfo {
    pub file: &'static str,
    pub schema_version: u32,
    pub columns: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckpointInfo {
    pub magic: String,
    pub format_version: u32,
    pub checksum: &'static str,
    pub count: usize,
}

/// Every convention a reader needs to reproduce or compare the numbers.
#[derive(Debug, Clone, Serialize)]
pub struct Design {
    pub reduction: &'static str,
    pub fourier_normalization: &'static str,
    pub sobolev_evaluation: &'static str,
    pub lp_bump: &'static str,
    pub r_quadrature: &'static str,
    pub time_quadrature: &'static str,
    pub dt_out: f64,
    pub scheme: &'static str,
    pub kick: &'static str,
    pub coupled_kick: &'static str,
    pub split_rescaling: &'static str,
    pub support_rel_tol: f64,
    pub origin_rule: &'static str,
    pub kappa_fit: Option<f64>,
    pub virial_rel_tol: f64,
    pub virial_abs_tol: f64,
    pub morawetz_cutoff: &'static str,
    pub m2_kernel: &'static str,
    pub sup_radii: &'static str,
    pub growth_fit: &'static str,
    pub growth_min_samples: usize,
    pub chain_rule: &'static str,
    pub interpolation: Interpolation,
    pub weight_series_cutoff: f64,
    pub hyperbolic_t0: Option<f64>,
    pub hyperbolic_t_data: Option<f64>,
    pub scatter_tol_rel: f64,
    pub scattering_predicate: &'static str,
    pub exterior_cone: &'static str,
}

impl Design {
    pub fn for_scenario(sc: &Scenario, kappa: Option<f64>) -> Self {
        let h = sc.hyperbolic.as_ref();
        Design {
            reduction: "phi = r*u with Dirichlet conditions at r = 0 and r = r_max",
            fourier_normalization: "u_hat(xi) = int u(x) e^{-i x.xi} dx; |u|_{H^s}^2 = (2 pi)^{-3} int |xi|^{2s} |u_hat|^2 dxi",
            sobolev_evaluation: "2 pi r_max sum_k xi_k^{2s} c_k^2 on the sine coefficients of phi",
            lp_bump: BumpProfile::default().name(),
            r_quadrature: "trapezoid on the grid plus the Euler-Maclaurin origin term where the integrand has nonzero slope at r = 0",
            time_quadrature: "trapezoid at the output stride",
            dt_out: sc.solver.dt * sc.solver.output_stride as f64,
            scheme: "strang: half kick, exact spectral drift, half kick",
            kick: "phi_t -= h * mu * phi^3 / r^2 pointwise",
            coupled_kick: "w and v kicked at the same instant: w by w^3, v by v^3 + 3 v^2 w + 3 v w^2",
            split_rescaling: "cut K bisected inside the final octave [2^{j-1}, 2^j] so the high-frequency norm equals the target; reported as K / 2^j",
            support_rel_tol: SUPPORT_REL_TOL,
            origin_rule: "u(0) = (4 u(r1) - u(r2)) / 3",
            kappa_fit: kappa,
            virial_rel_tol: VIRIAL_REL_TOL,
            virial_abs_tol: VIRIAL_ABS_TOL,
            morawetz_cutoff: sc.monitors.chi_profile.name(),
            m2_kernel: "closed-form Newtonian potential and distance gradient of the ball |y| <= 2R",
            sup_radii: "R = 2^k dr, k = 2..floor(log2 n)",
            growth_fit: "least squares of ln E(v) against ln(1 + t)",
            growth_min_samples: GROWTH_MIN_SAMPLES,
            chain_rule: CHAIN_RULE_FORMULA,
            interpolation: h.map(|h| h.interpolation).unwrap_or_default(),
            weight_series_cutoff: WEIGHT_SERIES_CUTOFF,
            hyperbolic_t0: h.map(|h| h.t0),
            hyperbolic_t_data: h.map(|h| h.t_data),
            scatter_tol_rel: sc.scatter_config().tol_rel,
            scattering_predicate: "the two latest dyadic profile defects are at most tol_rel times the data norm",
            exterior_cone: "cells straddling r = r_cone + t are clipped with linear sub-cell weighting",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorRecord>,
    pub scenario: String,
    pub config_hash: String,
    pub seed: u64,
    pub data_family: DataFamily,
    pub grid: GridInfo,
    pub solver: SolverSection,
    pub coupled: bool,
    pub csv: CsvInfo,
    pub checkpoints: CheckpointInfo,
    pub design: Design,
    pub artifacts: Vec<String>,
    pub wall_seconds: f64,
}

pub fn config_hash(sc: &Scenario) -> String {
    Sha256::digest(sc.canonical().as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

impl Manifest {
    pub fn new(sc: &Scenario) -> Self {
        let dr = sc.grid.r_max / (sc.grid.n as f64 + 1.0);
        Manifest {
            tool: "nlw",
            version: env!("CARGO_PKG_VERSION"),
            status: Status::Ok,
            error: None,
            scenario: sc.name.clone(),
            config_hash: config_hash(sc),
            seed: sc.seed,
            data_family: sc.data.family,
            grid: GridInfo {
                r_max: sc.grid.r_max,
                n: sc.grid.n,
                dr,
            },
            solver: sc.solver.clone(),
            coupled: sc.split.is_some(),
            csv: CsvInfo {
                file: "diagnostics.csv",
                schema_version: CSV_SCHEMA_VERSION,
                columns: columns(sc.monitors.radius),
            },
            checkpoints: CheckpointInfo {
                magic: String::from_utf8_lossy(MAGIC).into_owned(),
                format_version: FORMAT_VERSION,
                checksum: "fnv1a64",
                count: 0,
            },
            design: Design::for_scenario(sc, None),
            artifacts: Vec::new(),
            wall_seconds: 0.0,
        }
    }

    pub fn fail(&mut self, e: &CliError) {
        self.status = Status::Failed;
        self.error = Some(e.record());
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(path, text + "\n").map_err(|e| CliError::io(path, e))
    }
}
