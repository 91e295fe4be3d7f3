use serde::Serialize;

use super::record::DiagnosticsRecord;
use crate::error::{NlwError, Result};
use crate::scalar::Real;

/// Least-squares power law `E ≈ C(1+t)^p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrowthFit {
    pub exponent: f64,
    pub r2: f64,
    pub samples: usize,
}

pub const GROWTH_MIN_SAMPLES: usize = 20;

/// Fits `ln E_v` against `ln(1+t)`.
pub fn growth_fit<T: Real>(records: &[DiagnosticsRecord<T>]) -> Result<GrowthFit> {
    let t: Vec<f64> = records.iter().map(|r| r.t.as_f64()).collect();
    let e: Vec<f64> = records.iter().map(|r| r.energy_v.as_f64()).collect();
    growth_fit_series(&t, &e)
}

pub fn growth_fit_series(times: &[f64], values: &[f64]) -> Result<GrowthFit> {
    if times.len() < GROWTH_MIN_SAMPLES {
        return Err(NlwError::InsufficientData(format!(
            "growth fit needs at least {GROWTH_MIN_SAMPLES} records, got {}",
            times.len()
        )));
    }
    let lo = times.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = times.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !((1.0 + hi) / (1.0 + lo) >= 10.0) {
        return Err(NlwError::InsufficientData(format!(
            "growth fit needs (1+t) to span a decade; got [{}, {}]",
            1.0 + lo,
            1.0 + hi
        )));
    }
    if values.iter().any(|v| !(*v > 0.0)) {
        return Err(NlwError::InsufficientData(
            "growth fit needs positive energies".into(),
        ));
    }
    let x: Vec<f64> = times.iter().map(|t| (1.0 + t).ln()).collect();
    let y: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(&y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let syy: f64 = y.iter().map(|b| (b - my) * (b - my)).sum();
    let exponent = sxy / sxx;
    let r2 = if syy > 0.0 {
        (sxy * sxy) / (sxx * syy)
    } else {
        1.0
    };
    Ok(GrowthFit {
        exponent,
        r2,
        samples: times.len(),
    })
}
