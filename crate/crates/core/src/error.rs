use serde::Serialize;
use thiserror::Error;

/// Errors produced by the numerical core.
///
/// Scalar payloads are stored as `f64` regardless of the working precision so
/// that errors can be serialized into run manifests unchanged.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NlwError {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("unsupported Sobolev order s = {0}; resolved range is [-1, 2]")]
    UnsupportedOrder(f64),

    #[error("index {index} outside the resolved range [{min}, {max}]")]
    Range { index: i64, min: i64, max: i64 },

    #[error("value {value} outside the admissible range [{min}, {max}]")]
    OutOfRange { value: f64, min: f64, max: f64 },

    #[error("solver diverged in component {component} at step {step} (t = {t}): max amplitude {max_amplitude}")]
    Divergence {
        component: &'static str,
        step: u64,
        t: f64,
        max_amplitude: f64,
    },

    #[error("coverage: requested time range [{from}, {to}] not available in the stored trajectory [{have_from}, {have_to}]")]
    Coverage {
        from: f64,
        to: f64,
        have_from: f64,
        have_to: f64,
    },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("split target {target} unreachable; best achieved high-frequency norm {best}")]
    TargetUnreachable { target: f64, best: f64 },

    #[error("fields live on different grids")]
    GridMismatch,
}

/// Machine-readable view of an [`NlwError`], used in manifests and CLI output.
#[derive(Debug, Clone, Serialize)]
pub struct ErrorPayload {
    pub kind: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub component: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_amplitude: Option<f64>,
}

impl NlwError {
    pub fn kind(&self) -> &'static str {
        match self {
            NlwError::Config(_) => "config",
            NlwError::UnsupportedOrder(_) => "unsupported_order",
            NlwError::Range { .. } | NlwError::OutOfRange { .. } => "range",
            NlwError::Divergence { .. } => "divergence",
            NlwError::Coverage { .. } => "coverage",
            NlwError::InsufficientData(_) => "insufficient_data",
            NlwError::TargetUnreachable { .. } => "target_unreachable",
            NlwError::GridMismatch => "grid_mismatch",
        }
    }

    pub fn payload(&self) -> ErrorPayload {
        let (component, step, t, max_amplitude) = match *self {
            NlwError::Divergence {
                component,
                step,
                t,
                max_amplitude,
            } => (Some(component), Some(step), Some(t), Some(max_amplitude)),
            _ => (None, None, None, None),
        };
        ErrorPayload {
            kind: self.kind(),
            message: self.to_string(),
            component,
            step,
            t,
            max_amplitude,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.payload()).expect("error payload serializes")
    }
}

pub type Result<T> = std::result::Result<T, NlwError>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divergence_payload_is_machine_readable() {
        let e = NlwError::Divergence {
            component: "u",
            step: 42,
            t: 0.042,
            max_amplitude: f64::INFINITY,
        };
        let v: serde_json::Value = serde_json::from_str(&e.to_json()).unwrap();
        assert_eq!(v["kind"], "divergence");
        assert_eq!(v["step"], 42);
        assert_eq!(v["component"], "u");
        assert!(v["message"].as_str().unwrap().contains("step 42"));
    }
}
