//! Deterministic user populations.
//!
//! A scenario is fully determined by the master seed and the trial index:
//! the pair is mixed into a per-trial seed with SplitMix64, and the user
//! geometry and the decoding capabilities are drawn from two separate ChaCha
//! streams so that switching the capability mode leaves positions and fading
//! untouched.

use std::f64::consts::PI;

use noma_core::channel::{generate_channel, ArrayGeometry, ChannelParams, UserChannel};
use noma_core::codebook::{self, BeamCodebook, UserBeamSet};
use noma_core::{Complex, PowerBudget};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// How decoding capabilities are assigned.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CapabilityMode {
    /// Every user can decode `d_max` others.
    Homogeneous,
    /// Each user's capability is uniform on `0..=d_max`.
    UniformRandom,
}

/// Distribution of user distance inside the cell radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RadialDistribution {
    /// Distance uniform on `(0, radius]`.
    UniformDistance,
    /// Users uniform over the half-disc area.
    UniformArea,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub num_users: usize,
    pub num_divisions: usize,
    pub num_antennas: usize,
    pub spacing_ratio: f64,
    pub beams_per_user: usize,
    pub d_max: usize,
    pub capability_mode: CapabilityMode,
    pub radius: f64,
    pub radial: RadialDistribution,
    pub channel: ChannelParams,
    pub budget: PowerBudget,
    pub seed: u64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            num_users: 100,
            num_divisions: 20,
            num_antennas: 8,
            spacing_ratio: 0.5,
            beams_per_user: 2,
            d_max: 5,
            capability_mode: CapabilityMode::UniformRandom,
            radius: 5.0,
            radial: RadialDistribution::UniformDistance,
            channel: ChannelParams::default(),
            budget: PowerBudget::default(),
            seed: 1,
        }
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        if self.num_users == 0 {
            return Err(invalid("users", "must be at least 1"));
        }
        if self.num_divisions == 0 || self.num_divisions > u16::MAX as usize - 1 {
            return Err(invalid("divisions", "must be in 1..65534"));
        }
        if self.num_antennas == 0 {
            return Err(invalid("antennas", "must be at least 1"));
        }
        if !(self.spacing_ratio > 0.0 && self.spacing_ratio.is_finite()) {
            return Err(invalid("spacing_ratio", "must be positive"));
        }
        if self.beams_per_user == 0 || self.beams_per_user > self.num_divisions + 1 {
            return Err(invalid(
                "beams_per_user",
                format!(
                    "must be in 1..={} (divisions + 1), got {}",
                    self.num_divisions + 1,
                    self.beams_per_user
                ),
            ));
        }
        if self.d_max == 0 {
            return Err(invalid("d_max", "must be at least 1"));
        }
        if !(self.radius > 0.0 && self.radius.is_finite()) {
            return Err(invalid("radius", "must be positive"));
        }
        let b = &self.budget;
        if !(b.power > 0.0 && b.power.is_finite()) {
            return Err(invalid("power", "must be positive"));
        }
        if !(b.noise > 0.0 && b.noise.is_finite()) {
            return Err(invalid("noise", "must be positive"));
        }
        if !(b.qos_sinr >= 0.0 && b.qos_sinr.is_finite()) {
            return Err(invalid("qos", "must be nonnegative"));
        }
        Ok(())
    }

    pub fn geometry(&self) -> Result<ArrayGeometry> {
        Ok(ArrayGeometry::new(self.num_antennas, self.spacing_ratio)?)
    }

    pub fn codebook(&self) -> Result<BeamCodebook> {
        Ok(codebook::build_codebook(self.num_divisions, &self.geometry()?)?)
    }
}

/// SplitMix64 finalizer.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of trial `trial_index` under `master`.
pub fn trial_seed(master: u64, trial_index: u64) -> u64 {
    splitmix64(master ^ splitmix64(trial_index))
}

const GEOMETRY_STREAM: u64 = 0;
const CAPABILITY_STREAM: u64 = 1;

/// Draws the users of one trial.
pub fn generate_scenario(config: &ScenarioConfig, trial_index: u64) -> Result<Vec<UserChannel>> {
    config.validate()?;
    let geometry = config.geometry()?;
    let seed = trial_seed(config.seed, trial_index);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(GEOMETRY_STREAM);
    let mut caps = ChaCha8Rng::seed_from_u64(seed);
    caps.set_stream(CAPABILITY_STREAM);

    let users = (0..config.num_users)
        .map(|id| {
            let theta = rng.random_range(-PI / 2.0..PI / 2.0);
            // 1 - U lies in (0, 1]
            let u = 1.0 - rng.random::<f64>();
            let distance = match config.radial {
                RadialDistribution::UniformDistance => config.radius * u,
                RadialDistribution::UniformArea => config.radius * u.sqrt(),
            };
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            let alpha = Complex::new(re, im) * std::f64::consts::FRAC_1_SQRT_2;
            let d = match config.capability_mode {
                CapabilityMode::Homogeneous => config.d_max,
                CapabilityMode::UniformRandom => caps.random_range(0..=config.d_max),
            };
            generate_channel(&geometry, &config.channel, theta, distance, alpha)
                .with_id(id)
                .with_capability(d)
        })
        .collect();
    Ok(users)
}

/// Users of one trial together with the codebook and their beam sets.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub users: Vec<UserChannel>,
    pub codebook: BeamCodebook,
    pub beam_sets: Vec<UserBeamSet>,
}

impl Scenario {
    pub fn build(config: &ScenarioConfig, trial_index: u64) -> Result<Self> {
        let users = generate_scenario(config, trial_index)?;
        let codebook = config.codebook()?;
        let beam_sets = codebook::user_beam_sets(&users, &codebook, config.beams_per_user)?;
        Ok(Self {
            users,
            codebook,
            beam_sets,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_users() {
        let c = ScenarioConfig::default();
        assert_eq!(generate_scenario(&c, 3).unwrap(), generate_scenario(&c, 3).unwrap());
        assert_ne!(generate_scenario(&c, 3).unwrap(), generate_scenario(&c, 4).unwrap());
    }

    #[test]
    fn homogeneous_mode_pins_capabilities() {
        let c = ScenarioConfig {
            capability_mode: CapabilityMode::Homogeneous,
            ..ScenarioConfig::default()
        };
        assert!(generate_scenario(&c, 0)
            .unwrap()
            .iter()
            .all(|u| u.decoding_capability == 5));
    }

    #[test]
    fn capability_mode_does_not_move_users() {
        let het = ScenarioConfig::default();
        let hom = ScenarioConfig {
            capability_mode: CapabilityMode::Homogeneous,
            ..het.clone()
        };
        let a = generate_scenario(&het, 7).unwrap();
        let b = generate_scenario(&hom, 7).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(
                (x.theta, x.distance, x.complex_gain),
                (y.theta, y.distance, y.complex_gain)
            );
        }
    }

    #[test]
    fn users_stay_inside_the_cell() {
        for radial in [RadialDistribution::UniformDistance, RadialDistribution::UniformArea] {
            let c = ScenarioConfig {
                num_users: 2000,
                radial,
                ..ScenarioConfig::default()
            };
            for u in generate_scenario(&c, 1).unwrap() {
                assert!(u.distance > 0.0 && u.distance <= 5.0);
                assert!(u.theta >= -PI / 2.0 && u.theta < PI / 2.0);
                assert!(u.decoding_capability <= 5);
                assert_eq!(u.vector.len(), 8);
            }
        }
    }

    #[test]
    fn splitmix_reference_values() {
        // first outputs of the reference SplitMix64 generator seeded with 0
        assert_eq!(splitmix64(0), 0xe220_a839_7b1d_cdaf);
        assert_eq!(splitmix64(0x9e37_79b9_7f4a_7c15), 0x6e78_9e6a_a1b9_65f4);
    }

    #[test]
    fn validation_names_the_field() {
        let c = ScenarioConfig {
            beams_per_user: 22,
            ..ScenarioConfig::default()
        };
        let err = c.validate().unwrap_err().to_string();
        assert!(err.contains("beams_per_user"), "{err}");
    }
}
