//! Parameter sweeps over many trials.
//!
//! Trials run in parallel; each owns its scenario and results are gathered
//! in trial order, so aggregates do not depend on the thread count. The same
//! trial indices (and hence per-trial seeds) are reused at every grid point.

use noma_core::Algorithm;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::scenario::ScenarioConfig;
use crate::trial::{run_algorithms, TrialResult};

/// The scenario parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepAxis {
    #[serde(rename = "d_max")]
    DMax,
    #[serde(rename = "b", alias = "beams_per_user")]
    BeamsPerUser,
    #[serde(rename = "N", alias = "users")]
    Users,
    #[serde(rename = "B", alias = "divisions")]
    Divisions,
    #[serde(rename = "M", alias = "antennas")]
    Antennas,
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::DMax => "d_max",
            SweepAxis::BeamsPerUser => "b",
            SweepAxis::Users => "N",
            SweepAxis::Divisions => "B",
            SweepAxis::Antennas => "M",
        }
    }

    /// `base` with this axis set to `value`.
    pub fn apply(self, base: &ScenarioConfig, value: usize) -> ScenarioConfig {
        let mut c = base.clone();
        match self {
            SweepAxis::DMax => c.d_max = value,
            SweepAxis::BeamsPerUser => c.beams_per_user = value,
            SweepAxis::Users => c.num_users = value,
            SweepAxis::Divisions => c.num_divisions = value,
            SweepAxis::Antennas => c.num_antennas = value,
        }
        c
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub axis: SweepAxis,
    pub values: Vec<usize>,
}

impl Sweep {
    pub fn new(axis: SweepAxis, values: impl IntoIterator<Item = usize>) -> Self {
        Self {
            axis,
            values: values.into_iter().collect(),
        }
    }
}

/// Raw per-trial results at one sweep value, indexed `[trial][algorithm]`.
#[derive(Debug, Clone)]
pub struct GridPoint {
    pub value: usize,
    pub config: ScenarioConfig,
    pub trials: Vec<Vec<TrialResult>>,
}

impl GridPoint {
    /// Results of algorithm number `index` across trials.
    pub fn column(&self, index: usize) -> impl Iterator<Item = &TrialResult> + '_ {
        self.trials.iter().map(move |t| &t[index])
    }
}

/// Mean and standard error of the mean.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub mean: f64,
    pub std_error: f64,
}

impl Summary {
    pub fn of(values: impl IntoIterator<Item = f64>) -> Self {
        let values: Vec<f64> = values.into_iter().collect();
        let n = values.len();
        if n == 0 {
            return Self {
                mean: f64::NAN,
                std_error: f64::NAN,
            };
        }
        let mean = values.iter().sum::<f64>() / n as f64;
        if n == 1 {
            return Self { mean, std_error: 0.0 };
        }
        let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64;
        Self {
            mean,
            std_error: (var / n as f64).sqrt(),
        }
    }
}

/// One output row: an algorithm at one sweep value.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateRow {
    pub axis: SweepAxis,
    pub value: usize,
    pub algorithm: Algorithm,
    pub trials: usize,
    pub clusters: Summary,
    pub sum_rate: Summary,
    pub oma_rate: f64,
    pub examined: f64,
    pub candidates: f64,
    pub infeasible_total: usize,
    pub seconds: f64,
}

/// Runs `trials` trials of every algorithm at every sweep value.
pub fn run_grid(
    base: &ScenarioConfig,
    trials: usize,
    algorithms: &[Algorithm],
    sweep: &Sweep,
) -> Result<Vec<GridPoint>> {
    if trials == 0 {
        return Err(invalid("trials", "must be at least 1"));
    }
    if algorithms.is_empty() {
        return Err(invalid("algorithms", "list is empty"));
    }
    if sweep.values.is_empty() {
        return Err(invalid("sweep_values", "list is empty"));
    }
    sweep
        .values
        .iter()
        .map(|&value| {
            let config = sweep.axis.apply(base, value);
            config.validate()?;
            let trials = (0..trials as u64)
                .into_par_iter()
                .map(|t| run_algorithms(&config, t, algorithms))
                .collect::<Result<Vec<_>>>()?;
            Ok(GridPoint { value, config, trials })
        })
        .collect()
}

/// Collapses a grid point into one row per algorithm.
pub fn aggregate(axis: SweepAxis, point: &GridPoint, algorithms: &[Algorithm]) -> Vec<AggregateRow> {
    algorithms
        .iter()
        .enumerate()
        .map(|(i, &algorithm)| {
            let col: Vec<&TrialResult> = point.column(i).collect();
            let n = col.len() as f64;
            AggregateRow {
                axis,
                value: point.value,
                algorithm,
                trials: col.len(),
                clusters: Summary::of(col.iter().map(|r| r.num_clusters as f64)),
                sum_rate: Summary::of(col.iter().map(|r| r.sum_rate)),
                oma_rate: col.iter().map(|r| r.oma_rate).sum::<f64>() / n,
                examined: col.iter().map(|r| r.examined as f64).sum::<f64>() / n,
                candidates: col.iter().map(|r| r.candidates as f64).sum::<f64>() / n,
                infeasible_total: col.iter().map(|r| r.infeasible_clusters).sum(),
                seconds: col.iter().map(|r| r.elapsed).sum(),
            }
        })
        .collect()
}

/// [`run_grid`] followed by [`aggregate`] at every point.
pub fn monte_carlo(
    base: &ScenarioConfig,
    trials: usize,
    algorithms: &[Algorithm],
    sweep: &Sweep,
) -> Result<Vec<AggregateRow>> {
    let grid = run_grid(base, trials, algorithms, sweep)?;
    Ok(grid.iter().flat_map(|p| aggregate(sweep.axis, p, algorithms)).collect())
}
