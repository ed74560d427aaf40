//! Scenario generation, Monte-Carlo sweeps and CSV reporting for the
//! mmWave NOMA clustering algorithms in `noma-core`.

pub mod error;
pub mod experiment;
pub mod monte_carlo;
pub mod report;
pub mod scenario;
pub mod trial;

pub use error::{Result, SimError};
pub use experiment::{parse_config, AlgorithmName, ExperimentFile, Overrides};
pub use monte_carlo::{aggregate, monte_carlo, run_grid, AggregateRow, GridPoint, Summary, Sweep, SweepAxis};
pub use report::{write_csv, write_rows, HEADER};
pub use scenario::{generate_scenario, trial_seed, CapabilityMode, RadialDistribution, Scenario, ScenarioConfig};
pub use trial::{run_algorithms, run_on_scenario, run_trial, TrialResult};

/// Runs the experiment and writes its CSV to `file.output`.
pub fn run_experiment(file: &ExperimentFile) -> Result<Vec<AggregateRow>> {
    file.validate()?;
    let rows = monte_carlo(&file.scenario()?, file.trials, &file.algorithms(), &file.sweep())?;
    write_csv(&file.output, &rows, file.timing)?;
    Ok(rows)
}
