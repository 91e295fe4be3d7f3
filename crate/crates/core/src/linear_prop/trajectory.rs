use serde::Serialize;

use crate::error::{NlwError, Result};
use crate::monitors::DiagnosticsRecord;
use crate::radial_field::{FieldState, RadialGrid};
use crate::scalar::Real;

/// Provenance of a trajectory.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrajectoryMeta {
    pub label: String,
    /// Solver step (zero for trajectories assembled by hand).
    pub dt: f64,
    /// Steps between stored states.
    pub output_stride: usize,
    /// Coefficient `μ` of the cubic term (0 linear, 1 defocusing).
    pub nonlinearity: f64,
}

impl TrajectoryMeta {
    pub fn labeled(label: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            dt: 0.0,
            output_stride: 1,
            nonlinearity: 1.0,
        }
    }
}

/// Time-ordered states on one grid, optionally with a diagnostics record per
/// stored state.
#[derive(Debug, Clone)]
pub struct Trajectory<T: Real> {
    states: Vec<FieldState<T>>,
    records: Vec<DiagnosticsRecord<T>>,
    meta: TrajectoryMeta,
}

impl<T: Real> Trajectory<T> {
    pub fn new(states: Vec<FieldState<T>>, meta: TrajectoryMeta) -> Result<Self> {
        if let Some(first) = states.first() {
            let g = *first.grid();
            for w in states.windows(2) {
                if !(w[1].t > w[0].t) {
                    return Err(NlwError::Config(format!(
                        "trajectory times must increase strictly ({} then {})",
                        w[0].t, w[1].t
                    )));
                }
            }
            if states.iter().any(|s| *s.grid() != g) {
                return Err(NlwError::GridMismatch);
            }
        }
        Ok(Self {
            states,
            records: Vec::new(),
            meta,
        })
    }

    pub fn with_records(mut self, records: Vec<DiagnosticsRecord<T>>) -> Result<Self> {
        if records.len() != self.states.len() {
            return Err(NlwError::Config(format!(
                "{} records for {} states",
                records.len(),
                self.states.len()
            )));
        }
        self.records = records;
        Ok(self)
    }

    pub(crate) fn from_parts(
        states: Vec<FieldState<T>>,
        records: Vec<DiagnosticsRecord<T>>,
        meta: TrajectoryMeta,
    ) -> Self {
        Self {
            states,
            records,
            meta,
        }
    }

    pub fn states(&self) -> &[FieldState<T>] {
        &self.states
    }

    pub fn records(&self) -> &[DiagnosticsRecord<T>] {
        &self.records
    }

    pub fn meta(&self) -> &TrajectoryMeta {
        &self.meta
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn grid(&self) -> Option<&RadialGrid<T>> {
        self.states.first().map(|s| s.grid())
    }

    pub fn times(&self) -> Vec<T> {
        self.states.iter().map(|s| s.t).collect()
    }

    pub fn t_start(&self) -> Option<T> {
        self.states.first().map(|s| s.t)
    }

    pub fn t_end(&self) -> Option<T> {
        self.states.last().map(|s| s.t)
    }

    /// Index of the stored state closest to `t`; errors outside the stored range
    /// (with half a stride of slack at each end).
    pub fn index_near(&self, t: T) -> Result<usize> {
        let (Some(a), Some(b)) = (self.t_start(), self.t_end()) else {
            return Err(NlwError::InsufficientData("empty trajectory".into()));
        };
        let slack = if self.states.len() > 1 {
            (self.states[1].t - self.states[0].t) * T::lit(0.5)
        } else {
            T::zero()
        };
        if t < a - slack || t > b + slack {
            return Err(NlwError::OutOfRange {
                value: t.as_f64(),
                min: a.as_f64(),
                max: b.as_f64(),
            });
        }
        let i = self.states.partition_point(|s| s.t < t);
        let i = match i {
            0 => 0,
            i if i >= self.states.len() => self.states.len() - 1,
            i => {
                if (self.states[i].t - t).abs() < (t - self.states[i - 1].t).abs() {
                    i
                } else {
                    i - 1
                }
            }
        };
        Ok(i)
    }

    pub fn state_near(&self, t: T) -> Result<&FieldState<T>> {
        Ok(&self.states[self.index_near(t)?])
    }

    /// Sub-trajectory with stored indices `from..=to`.
    pub fn slice(&self, from: usize, to: usize) -> Self {
        let to = to.min(self.states.len().saturating_sub(1));
        let records = if self.records.is_empty() {
            Vec::new()
        } else {
            self.records[from..=to].to_vec()
        };
        Self {
            states: self.states[from..=to].to_vec(),
            records,
            meta: self.meta.clone(),
        }
    }
}

/// Trapezoid rule in time over a sampled integrand.
pub(crate) fn trapezoid_in_time<T: Real>(times: &[T], values: &[T]) -> T {
    times
        .windows(2)
        .zip(values.windows(2))
        .fold(T::zero(), |acc, (t, v)| {
            acc + (t[1] - t[0]) * (v[0] + v[1]) * T::lit(0.5)
        })
}
