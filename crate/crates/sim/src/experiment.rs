//! Experiment files.
//!
//! An experiment is a TOML document with the scenario parameters, the trial
//! count, the algorithms to compare and one sweep axis. Omitted scenario
//! keys take the standard simulation defaults (one path, path-loss exponent
//! 2, half-wavelength spacing, 8 antennas, 20 divisions, 5 m radius,
//! noise 7.962e-11 W, SINR floor 0.02, 1 W per channel). Unknown keys are
//! rejected.
//!
//! ```toml
//! users = 100
//! capabilities = "uniform-random"
//! d_max = 5
//! trials = 100
//! algorithms = ["mec-greedy", "bb-het:2", "oma"]
//! sweep_axis = "b"
//! sweep_values = [1, 2, 3, 4, 5, 6]
//! output = "fig4.csv"
//! ```

use std::fmt;
use std::path::{Path, PathBuf};

use noma_core::{Algorithm, ChannelParams, PowerBudget};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result, SimError};
use crate::monte_carlo::{Sweep, SweepAxis};
use crate::scenario::{CapabilityMode, RadialDistribution, ScenarioConfig};

/// An [`Algorithm`] as written in experiment files (`"bb-het:2"`, ...).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct AlgorithmName(pub Algorithm);

impl TryFrom<String> for AlgorithmName {
    type Error = String;

    fn try_from(s: String) -> std::result::Result<Self, String> {
        s.parse()
            .map(AlgorithmName)
            .map_err(|e| format!("unknown algorithm `{s}`: {e}"))
    }
}

impl From<AlgorithmName> for String {
    fn from(a: AlgorithmName) -> String {
        a.0.to_string()
    }
}

impl fmt::Display for AlgorithmName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

mod defaults {
    use super::*;

    pub fn users() -> usize {
        100
    }
    pub fn divisions() -> usize {
        20
    }
    pub fn antennas() -> usize {
        8
    }
    pub fn spacing_ratio() -> f64 {
        0.5
    }
    pub fn beams_per_user() -> usize {
        2
    }
    pub fn d_max() -> usize {
        5
    }
    pub fn capabilities() -> CapabilityMode {
        CapabilityMode::UniformRandom
    }
    pub fn radius() -> f64 {
        5.0
    }
    pub fn radial() -> RadialDistribution {
        RadialDistribution::UniformDistance
    }
    pub fn paths() -> usize {
        1
    }
    pub fn pathloss_exponent() -> f64 {
        2.0
    }
    pub fn power() -> f64 {
        1.0
    }
    pub fn noise() -> f64 {
        PowerBudget::DEFAULT_NOISE
    }
    pub fn qos() -> f64 {
        PowerBudget::DEFAULT_QOS_SINR
    }
    pub fn seed() -> u64 {
        1
    }
    pub fn trials() -> usize {
        100
    }
    pub fn algorithms() -> Vec<AlgorithmName> {
        vec![AlgorithmName(Algorithm::MecGreedy)]
    }
    pub fn output() -> PathBuf {
        PathBuf::from("results.csv")
    }
    pub fn timing() -> bool {
        true
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentFile {
    #[serde(default = "defaults::users")]
    pub users: usize,
    #[serde(default = "defaults::divisions")]
    pub divisions: usize,
    #[serde(default = "defaults::antennas")]
    pub antennas: usize,
    #[serde(default = "defaults::spacing_ratio")]
    pub spacing_ratio: f64,
    #[serde(default = "defaults::beams_per_user")]
    pub beams_per_user: usize,
    #[serde(default = "defaults::d_max")]
    pub d_max: usize,
    #[serde(default = "defaults::capabilities")]
    pub capabilities: CapabilityMode,
    #[serde(default = "defaults::radius")]
    pub radius: f64,
    #[serde(default = "defaults::radial")]
    pub radial: RadialDistribution,
    #[serde(default = "defaults::paths")]
    pub paths: usize,
    #[serde(default = "defaults::pathloss_exponent")]
    pub pathloss_exponent: f64,
    #[serde(default = "defaults::power")]
    pub power: f64,
    #[serde(default = "defaults::noise")]
    pub noise: f64,
    #[serde(default = "defaults::qos")]
    pub qos: f64,
    #[serde(default = "defaults::seed")]
    pub seed: u64,
    #[serde(default = "defaults::trials")]
    pub trials: usize,
    #[serde(default = "defaults::algorithms")]
    pub algorithms: Vec<AlgorithmName>,
    pub sweep_axis: SweepAxis,
    pub sweep_values: Vec<usize>,
    #[serde(default = "defaults::output")]
    pub output: PathBuf,
    /// Write measured seconds to the CSV; off gives byte-reproducible files.
    #[serde(default = "defaults::timing")]
    pub timing: bool,
}

/// Command-line values that take precedence over the file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub output: Option<PathBuf>,
    pub algorithms: Option<Vec<Algorithm>>,
    pub users: Option<usize>,
    pub divisions: Option<usize>,
    pub antennas: Option<usize>,
    pub beams_per_user: Option<usize>,
    pub d_max: Option<usize>,
    pub power: Option<f64>,
    pub no_timing: bool,
}

/// Reads and validates an experiment file.
pub fn parse_config(path: impl AsRef<Path>) -> Result<ExperimentFile> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| SimError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    ExperimentFile::from_toml(&text)
}

fn axis_field(axis: SweepAxis) -> &'static str {
    match axis {
        SweepAxis::DMax => "d_max",
        SweepAxis::BeamsPerUser => "beams_per_user",
        SweepAxis::Users => "users",
        SweepAxis::Divisions => "divisions",
        SweepAxis::Antennas => "antennas",
    }
}

impl ExperimentFile {
    /// Parses and validates a TOML document.
    pub fn from_toml(text: &str) -> Result<Self> {
        let file: Self = toml::from_str(text)?;
        file.validate()?;
        Ok(file)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("experiment files always serialize")
    }

    /// A file with every default and the given sweep.
    pub fn with_sweep(axis: SweepAxis, values: Vec<usize>) -> Self {
        Self {
            users: defaults::users(),
            divisions: defaults::divisions(),
            antennas: defaults::antennas(),
            spacing_ratio: defaults::spacing_ratio(),
            beams_per_user: defaults::beams_per_user(),
            d_max: defaults::d_max(),
            capabilities: defaults::capabilities(),
            radius: defaults::radius(),
            radial: defaults::radial(),
            paths: defaults::paths(),
            pathloss_exponent: defaults::pathloss_exponent(),
            power: defaults::power(),
            noise: defaults::noise(),
            qos: defaults::qos(),
            seed: defaults::seed(),
            trials: defaults::trials(),
            algorithms: defaults::algorithms(),
            sweep_axis: axis,
            sweep_values: values,
            output: defaults::output(),
            timing: defaults::timing(),
        }
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(v) = o.seed {
            self.seed = v;
        }
        if let Some(v) = o.trials {
            self.trials = v;
        }
        if let Some(v) = &o.output {
            self.output = v.clone();
        }
        if let Some(v) = &o.algorithms {
            self.algorithms = v.iter().copied().map(AlgorithmName).collect();
        }
        if let Some(v) = o.users {
            self.users = v;
        }
        if let Some(v) = o.divisions {
            self.divisions = v;
        }
        if let Some(v) = o.antennas {
            self.antennas = v;
        }
        if let Some(v) = o.beams_per_user {
            self.beams_per_user = v;
        }
        if let Some(v) = o.d_max {
            self.d_max = v;
        }
        if let Some(v) = o.power {
            self.power = v;
        }
        if o.no_timing {
            self.timing = false;
        }
    }

    pub fn algorithms(&self) -> Vec<Algorithm> {
        self.algorithms.iter().map(|a| a.0).collect()
    }

    pub fn sweep(&self) -> Sweep {
        Sweep::new(self.sweep_axis, self.sweep_values.iter().copied())
    }

    /// Scenario parameters before the sweep axis is applied.
    pub fn scenario(&self) -> Result<ScenarioConfig> {
        if !(self.pathloss_exponent >= 0.0 && self.pathloss_exponent.is_finite()) {
            return Err(invalid("pathloss_exponent", "must be nonnegative"));
        }
        let channel = ChannelParams::new(self.paths, self.pathloss_exponent)
            .map_err(|_| invalid("paths", "must be at least 1"))?;
        Ok(ScenarioConfig {
            num_users: self.users,
            num_divisions: self.divisions,
            num_antennas: self.antennas,
            spacing_ratio: self.spacing_ratio,
            beams_per_user: self.beams_per_user,
            d_max: self.d_max,
            capability_mode: self.capabilities,
            radius: self.radius,
            radial: self.radial,
            channel,
            budget: PowerBudget {
                power: self.power,
                noise: self.noise,
                qos_sinr: self.qos,
            },
            seed: self.seed,
        })
    }

    /// Checks every value the run will use, naming the offending key.
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(invalid("trials", "must be at least 1"));
        }
        if self.algorithms.is_empty() {
            return Err(invalid("algorithms", "list is empty"));
        }
        if self.sweep_values.is_empty() {
            return Err(invalid("sweep_values", "list is empty"));
        }
        let base = self.scenario()?;
        for &value in &self.sweep_values {
            let config = self.sweep_axis.apply(&base, value);
            if let Err(SimError::InvalidField { field, message }) = config.validate() {
                return Err(if field == axis_field(self.sweep_axis) {
                    invalid(
                        "sweep_values",
                        format!("{} = {value}: {message}", self.sweep_axis.name()),
                    )
                } else {
                    SimError::InvalidField { field, message }
                });
            }
            for a in &self.algorithms {
                match a.0 {
                    Algorithm::BbHet { m } if m == 0 || m >= config.d_max => {
                        return Err(invalid(
                            "algorithms",
                            format!("{a} needs 1 <= m < d_max (d_max = {})", config.d_max),
                        ));
                    }
                    Algorithm::Bb if config.capability_mode != CapabilityMode::Homogeneous => {
                        return Err(invalid("algorithms", "bb needs capabilities = \"homogeneous\""));
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }
}
