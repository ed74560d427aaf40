use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use noma_core::Algorithm;
use noma_sim::{parse_config, run_experiment, ExperimentFile, Overrides, SweepAxis};

#[derive(Parser)]
#[command(
    name = "noma-sim",
    version,
    about = "Monte-Carlo evaluation of mmWave NOMA user clustering"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment file and write its CSV.
    Run(Box<RunArgs>),
    /// Print an experiment file with every key at its default.
    Template,
}

#[derive(Args)]
struct RunArgs {
    config: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Replaces the file's algorithm list; repeatable.
    #[arg(long = "algorithm")]
    algorithms: Vec<Algorithm>,
    /// Number of users N.
    #[arg(long)]
    users: Option<usize>,
    /// Number of angular divisions B.
    #[arg(long)]
    beams: Option<usize>,
    /// Number of antennas M.
    #[arg(long)]
    antennas: Option<usize>,
    /// Beams per user b.
    #[arg(long)]
    beams_per_user: Option<usize>,
    #[arg(long)]
    dmax: Option<usize>,
    /// Transmit power per channel in watts.
    #[arg(long)]
    power: Option<f64>,
    /// Write zero in the seconds column.
    #[arg(long)]
    no_timing: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Template => {
            print!(
                "{}",
                ExperimentFile::with_sweep(SweepAxis::DMax, (1..=10).collect()).to_toml()
            );
            ExitCode::SUCCESS
        }
        Command::Run(args) => {
            let RunArgs {
                config,
                seed,
                trials,
                out,
                algorithms,
                users,
                beams,
                antennas,
                beams_per_user,
                dmax,
                power,
                no_timing,
            } = *args;
            let overrides = Overrides {
                seed,
                trials,
                output: out,
                algorithms: (!algorithms.is_empty()).then_some(algorithms),
                users,
                divisions: beams,
                antennas,
                beams_per_user,
                d_max: dmax,
                power,
                no_timing,
            };
            let result = parse_config(&config).and_then(|mut file| {
                file.apply(&overrides);
                run_experiment(&file).map(|rows| (file, rows))
            });
            match result {
                Ok((file, rows)) => {
                    eprintln!("wrote {} rows to {}", rows.len(), file.output.display());
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::FAILURE
                }
            }
        }
    }
}
