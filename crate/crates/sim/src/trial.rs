//! One Monte Carlo trial: scenario, clustering, power allocation, rates.

use std::time::Instant;

use noma_core::cluster::{self, Algorithm, ClusterPlan};
use noma_core::power;

use crate::error::{Result, SimError};
use crate::scenario::{CapabilityMode, Scenario, ScenarioConfig};

#[derive(Debug, Clone, PartialEq)]
pub struct TrialResult {
    pub algorithm: Algorithm,
    /// Number of clusters K.
    pub num_clusters: usize,
    pub sum_rate: f64,
    pub oma_rate: f64,
    /// I_1.
    pub examined: u64,
    /// I_2, singletons included.
    pub candidates: u64,
    /// I_2 without the singletons.
    pub multi_user_candidates: u64,
    pub infeasible_clusters: usize,
    /// Wall-clock seconds spent clustering and allocating power.
    pub elapsed: f64,
}

/// Runs one algorithm on trial `trial_index`.
pub fn run_trial(config: &ScenarioConfig, trial_index: u64, algorithm: Algorithm) -> Result<TrialResult> {
    let mut results = run_algorithms(config, trial_index, &[algorithm])?;
    Ok(results.remove(0))
}

/// Runs several algorithms on the same scenario.
pub fn run_algorithms(config: &ScenarioConfig, trial_index: u64, algorithms: &[Algorithm]) -> Result<Vec<TrialResult>> {
    let scenario = Scenario::build(config, trial_index)?;
    run_on_scenario(config, &scenario, algorithms)
}

pub fn run_on_scenario(
    config: &ScenarioConfig,
    scenario: &Scenario,
    algorithms: &[Algorithm],
) -> Result<Vec<TrialResult>> {
    let best_gains: Vec<f64> = scenario
        .users
        .iter()
        .zip(&scenario.beam_sets)
        .map(|(u, s)| noma_core::channel::effective_gain(u, scenario.codebook.precoder(s.best())))
        .collect();
    let oma_rate = power::oma_rate(&best_gains, &config.budget);

    let mut results = Vec::with_capacity(algorithms.len());
    for &algorithm in algorithms {
        let start = Instant::now();
        let plan = match algorithm {
            // the greedy scan needs no materialized candidate list
            Algorithm::MecGreedy => {
                cluster::greedy_mec_direct(&scenario.users, &scenario.beam_sets, &scenario.codebook, config.d_max)?
            }
            Algorithm::MecExact => {
                let list = cluster::enumerate_candidates(
                    &scenario.users,
                    &scenario.beam_sets,
                    &scenario.codebook,
                    config.d_max,
                )?;
                cluster::exact_mec(&list)?
            }
            Algorithm::Bb => {
                if config.capability_mode != CapabilityMode::Homogeneous {
                    return Err(SimError::RequiresHomogeneous {
                        algorithm: algorithm.to_string(),
                    });
                }
                cluster::noma_bb(&scenario.users, &scenario.beam_sets, &scenario.codebook, config.d_max)?
            }
            Algorithm::BbHet { m } => cluster::noma_bb_het(
                &scenario.users,
                &scenario.beam_sets,
                &scenario.codebook,
                config.d_max,
                m,
            )?,
            Algorithm::Oma => cluster::oma_plan(&scenario.users, &scenario.beam_sets, &scenario.codebook)?,
        };
        check_plan(&plan, scenario, algorithm)?;
        let (_, report) = power::evaluate_plan(&plan, &config.budget);
        // MEC lists hold one singleton per user besides the multi-user clusters
        let multi = match algorithm {
            Algorithm::MecGreedy | Algorithm::MecExact => plan.candidates - scenario.users.len() as u64,
            _ => 0,
        };
        results.push(TrialResult {
            algorithm,
            num_clusters: plan.num_clusters(),
            sum_rate: report.effective_sum_rate,
            oma_rate,
            examined: plan.examined,
            candidates: plan.candidates,
            multi_user_candidates: multi,
            infeasible_clusters: report.infeasible_clusters,
            elapsed: start.elapsed().as_secs_f64(),
        });
    }
    Ok(results)
}

fn check_plan(plan: &ClusterPlan, scenario: &Scenario, algorithm: Algorithm) -> Result<()> {
    let best_only = !matches!(algorithm, Algorithm::MecGreedy | Algorithm::MecExact);
    plan.verify(&scenario.users, &scenario.beam_sets, best_only)
        .map_err(|violation| SimError::InvalidPlan {
            algorithm: algorithm.to_string(),
            violation,
        })
}
