//! Scenario files.
//!
//! A scenario is a TOML document. Only `name` is required; every other table
//! falls back to the defaults below.
//!
//! ```toml
//! name = "gaussian_ref"
//! seed = 0
//!
//! [data]
//! family = "gaussian"      # gaussian | bump | band_limited | rescaled
//! amplitude = 1.0
//! width = 1.0
//!
//! [grid]
//! r_max = 40.0
//! n = 4095
//!
//! [solver]
//! dt = 1e-3
//! t_end = 10.0
//! output_stride = 10
//!
//! [split]                  # optional: run the coupled system instead
//! epsilon_target = 0.1
//!
//! [hyperbolic]             # optional
//! s_max = 2.0
//! m = 1023
//!
//! [scatter]                # optional
//! r_cone = 5.0
//! ```

use std::path::Path;

use nlw_core::hyperbolic::Interpolation;
use nlw_core::monitors::{MonitorConfig, MorawetzCutoff};
use nlw_core::nlw_solver::{Scheme, SolverConfig, SplitConfig};
use nlw_core::radial_field::{make_grid, RadialGrid};
use nlw_core::scattering::ScatterConfig;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum DataFamily {
    /// `A·e^{−(r/w)²}`.
    #[default]
    Gaussian,
    /// `A·exp(1 − 1/(1 − ((r − c)/w)²))` on `|r − c| < w`.
    Bump,
    /// Seeded random sum of `sin(ξr)/(ξr)` with `ξ ∈ [f/√2, f√2]`, under a
    /// Gaussian envelope of width `w`, scaled to critical norm `A`.
    BandLimited,
    /// The Gaussian under the critical scaling `λ·u₀(λr)`, `λ²·u₁(λr)`.
    Rescaled,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DataSection {
    pub family: DataFamily,
    pub amplitude: f64,
    pub width: f64,
    /// Shell radius of the bump family.
    pub center: f64,
    /// Center frequency of the band-limited family.
    pub frequency: f64,
    /// Number of random modes of the band-limited family.
    pub modes: usize,
    pub lambda: f64,
    /// Amplitude of `u₁ = B·e^{−(r/w)²}` for the Gaussian families.
    pub velocity: f64,
}

impl Default for DataSection {
    fn default() -> Self {
        Self {
            family: DataFamily::Gaussian,
            amplitude: 1.0,
            width: 1.0,
            center: 0.0,
            frequency: 4.0,
            modes: 8,
            lambda: 1.0,
            velocity: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GridSection {
    pub r_max: f64,
    /// Interior nodes; `n + 1` a power of two keeps the transforms fast.
    pub n: usize,
}

impl Default for GridSection {
    fn default() -> Self {
        Self {
            r_max: 40.0,
            n: 4095,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverSection {
    pub dt: f64,
    pub t_end: f64,
    pub output_stride: usize,
    pub scheme: Scheme,
    pub nonlinearity: f64,
}

impl Default for SolverSection {
    fn default() -> Self {
        let d = SolverConfig::<f64>::default();
        Self {
            dt: d.dt,
            t_end: d.t_end,
            output_stride: d.output_stride,
            scheme: d.scheme,
            nonlinearity: d.nonlinearity,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SplitSection {
    pub j_cut: i32,
    pub epsilon_target: Option<f64>,
    pub refine_scale: bool,
    /// Also run the uncoupled equation and report the reconstruction defect.
    pub compare_direct: bool,
}

impl Default for SplitSection {
    fn default() -> Self {
        Self {
            j_cut: 0,
            epsilon_target: None,
            refine_scale: true,
            compare_direct: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MonitorSection {
    pub radius: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub delta: f64,
    pub chi_profile: MorawetzCutoff,
}

impl Default for MonitorSection {
    fn default() -> Self {
        let d = MonitorConfig::<f64>::default();
        Self {
            radius: d.radius,
            c1: d.c1,
            c2: d.c2,
            c3: d.c3,
            delta: d.delta,
            chi_profile: d.chi_profile,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct HyperbolicSection {
    pub s_max: f64,
    pub m: usize,
    /// Defaults to `ds/4`.
    pub dt_tau: Option<f64>,
    pub tau_end: f64,
    pub output_stride: usize,
    /// Hyperboloid `τ = 0` meets `r = 0` at trajectory time `t_data`...
    pub t_data: f64,
    /// ...at distance `t0` from the vertex.
    pub t0: f64,
    pub interpolation: Interpolation,
    /// Nodes of a zero-padded grid (same `ds`) for a longer native run.
    pub pad_m: Option<usize>,
    pub pad_tau_end: f64,
}

impl Default for HyperbolicSection {
    fn default() -> Self {
        Self {
            s_max: 2.0,
            m: 1023,
            dt_tau: None,
            tau_end: 0.5,
            output_stride: 8,
            t_data: 0.0,
            t0: 4.0,
            interpolation: Interpolation::default(),
            pad_m: None,
            pad_tau_end: 2.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ScatterSection {
    pub r_cone: f64,
    pub tol_rel: f64,
    pub min_pair_time: f64,
}

impl Default for ScatterSection {
    fn default() -> Self {
        let d = ScatterConfig::default();
        Self {
            r_cone: d.r_cone,
            tol_rel: d.tol_rel,
            min_pair_time: d.min_pair_time,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OutputSection {
    pub checkpoints: bool,
    /// Write every k-th stored state.
    pub checkpoint_every: usize,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self {
            checkpoints: true,
            checkpoint_every: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub name: String,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub data: DataSection,
    #[serde(default)]
    pub grid: GridSection,
    #[serde(default)]
    pub solver: SolverSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<SplitSection>,
    #[serde(default)]
    pub monitors: MonitorSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hyperbolic: Option<HyperbolicSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scatter: Option<ScatterSection>,
    #[serde(default)]
    pub output: OutputSection,
}

impl Scenario {
    pub fn grid(&self) -> Result<RadialGrid<f64>> {
        make_grid(self.grid.r_max, self.grid.n).map_err(|e| CliError::field("grid", e))
    }

    pub fn solver_config(&self) -> SolverConfig<f64> {
        SolverConfig {
            dt: self.solver.dt,
            t_end: self.solver.t_end,
            output_stride: self.solver.output_stride,
            scheme: self.solver.scheme,
            nonlinearity: self.solver.nonlinearity,
        }
    }

    pub fn split_config(&self) -> Option<SplitConfig<f64>> {
        self.split.as_ref().map(|s| SplitConfig {
            j_cut: s.j_cut,
            epsilon_target: s.epsilon_target,
            refine_scale: s.refine_scale && s.epsilon_target.is_some(),
        })
    }

    pub fn monitor_config(&self) -> MonitorConfig<f64> {
        let m = &self.monitors;
        MonitorConfig {
            radius: m.radius,
            c1: m.c1,
            c2: m.c2,
            c3: m.c3,
            delta: m.delta,
            chi_profile: m.chi_profile,
        }
    }

    pub fn scatter_config(&self) -> ScatterConfig {
        let s = self.scatter.clone().unwrap_or_default();
        ScatterConfig {
            r_cone: s.r_cone,
            tol_rel: s.tol_rel,
            min_pair_time: s.min_pair_time,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !is_safe_name(&self.name) {
            return Err(CliError::Validation {
                field: "name".into(),
                message: format!(
                    "{:?} must be nonempty and use only ASCII letters, digits, '-', '_' or '.' (not leading)",
                    self.name
                ),
            });
        }
        if self.grid.n == 0 {
            return Err(CliError::Validation {
                field: "grid.n".into(),
                message: "must be positive".into(),
            });
        }
        let grid = self.grid()?;
        self.solver_config()
            .validate(&grid)
            .map_err(|e| CliError::field("solver", e))?;
        self.monitor_config()
            .validate()
            .map_err(|e| CliError::field("monitors", e))?;
        if let Some(sc) = self.split_config() {
            sc.validate().map_err(|e| CliError::field("split", e))?;
        }
        let d = &self.data;
        let positive = |field: &str, x: f64| {
            if x.is_finite() && x > 0.0 {
                Ok(())
            } else {
                Err(CliError::Validation {
                    field: field.into(),
                    message: format!("must be positive, got {x}"),
                })
            }
        };
        positive("data.width", d.width)?;
        if !(d.amplitude.is_finite()
            && d.velocity.is_finite()
            && d.center.is_finite()
            && d.center >= 0.0)
        {
            return Err(CliError::Validation {
                field: "data".into(),
                message: "amplitude, velocity and center must be finite, center nonnegative".into(),
            });
        }
        match d.family {
            DataFamily::BandLimited => {
                positive("data.frequency", d.frequency)?;
                if d.modes == 0 {
                    return Err(CliError::Validation {
                        field: "data.modes".into(),
                        message: "must be positive".into(),
                    });
                }
            }
            DataFamily::Rescaled => positive("data.lambda", d.lambda)?,
            DataFamily::Bump if d.center > 0.0 && d.center < d.width => {
                return Err(CliError::Validation {
                    field: "data.center".into(),
                    message:
                        "a bump off the origin must clear it: use center = 0 or center >= width"
                            .into(),
                });
            }
            _ => {}
        }
        if let Some(h) = &self.hyperbolic {
            positive("hyperbolic.s_max", h.s_max)?;
            positive("hyperbolic.t0", h.t0)?;
            if h.m == 0 || h.output_stride == 0 {
                return Err(CliError::Validation {
                    field: "hyperbolic".into(),
                    message: "m and output_stride must be positive".into(),
                });
            }
            if let Some(p) = h.pad_m {
                if p < h.m {
                    return Err(CliError::Validation {
                        field: "hyperbolic.pad_m".into(),
                        message: format!("must be at least m = {}", h.m),
                    });
                }
            }
        }
        if let Some(s) = &self.scatter {
            if !(s.r_cone >= 0.0 && s.tol_rel > 0.0 && s.min_pair_time > 0.0) {
                return Err(CliError::Validation {
                    field: "scatter".into(),
                    message: "r_cone must be nonnegative, tol_rel and min_pair_time positive"
                        .into(),
                });
            }
        }
        if self.output.checkpoint_every == 0 {
            return Err(CliError::Validation {
                field: "output.checkpoint_every".into(),
                message: "must be positive".into(),
            });
        }
        Ok(())
    }

    /// Canonical TOML form: defaults filled in, fixed key order.
    pub fn canonical(&self) -> String {
        toml::to_string(self).expect("scenario serializes")
    }
}

fn is_safe_name(name: &str) -> bool {
    !name.is_empty()
        && !name.starts_with('.')
        && name.len() <= 128
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.'))
}

/// Parses and validates a scenario. In strict mode any key the schema does
/// not know is an error; otherwise unknown keys are returned for warning.
pub fn parse_config_with(text: &str, strict: bool) -> Result<(Scenario, Vec<String>)> {
    let de = toml::Deserializer::parse(text).map_err(|e| CliError::parse(text, &e))?;
    let mut ignored = Vec::new();
    let sc: Scenario = serde_ignored::deserialize(de, |path| ignored.push(path.to_string()))
        .map_err(|e| CliError::parse(text, &e))?;
    if strict {
        if let Some(key) = ignored.first() {
            let (line, column) = locate_key(text, key).unwrap_or((0, 0));
            return Err(CliError::UnknownKey {
                key: key.clone(),
                line,
                column,
            });
        }
    }
    sc.validate()?;
    Ok((sc, ignored))
}

pub fn parse_config(text: &str) -> Result<Scenario> {
    parse_config_with(text, true).map(|(s, _)| s)
}

pub fn load_config(path: &Path, strict: bool) -> Result<(Scenario, Vec<String>)> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_config_with(&text, strict)
}

/// 1-based line and column of the key `a.b.c` under its `[a.b]` header.
fn locate_key(text: &str, path: &str) -> Option<(usize, usize)> {
    let (table, key) = match path.rsplit_once('.') {
        Some((t, k)) => (t, k),
        None => ("", path),
    };
    let mut current = String::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim_start();
        if let Some(rest) = trimmed.strip_prefix('[') {
            current = rest.split(']').next().unwrap_or("").trim().to_string();
            if table.is_empty() {
                continue;
            }
            if current == path {
                return Some((i + 1, line.len() - trimmed.len() + 2));
            }
            continue;
        }
        let lhs = trimmed.split('=').next().unwrap_or("").trim();
        if current == table && lhs == key && trimmed.contains('=') {
            return Some((i + 1, line.len() - trimmed.len() + 1));
        }
    }
    None
}
