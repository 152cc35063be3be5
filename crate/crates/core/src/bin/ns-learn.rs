use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ns_learn::cli::{
    cmd_eval, cmd_experiment, cmd_fit, cmd_simulate, configure_threads, EvalArgs, ExperimentArgs, FitArgs,
    SimulateArgs,
};

/// Nash-Sutcliffe estimation and multi-series forecast evaluation.
#[derive(Parser)]
#[command(name = "ns-learn", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit a regression and write a fit file.
    Fit(FitArgs),
    /// Evaluate predictions and emit a JSON report.
    Eval(EvalArgs),
    /// Generate a simulation scenario as CSV files.
    Simulate(SimulateArgs),
    /// Run an end-to-end estimator comparison.
    Experiment(ExperimentArgs),
}

fn run(cli: Cli) -> ns_learn::Result<()> {
    configure_threads()?;
    match cli.command {
        Command::Fit(args) => {
            let fit = cmd_fit(&args)?;
            println!("condition estimate: {:e}", fit.condition_estimate);
            if let Some(ns) = fit.train_realized_ns {
                println!("train realized NS loss: {ns}");
            }
        }
        Command::Eval(args) => {
            let report = cmd_eval(&args)?;
            if args.out.is_none() {
                println!("{}", serde_json::to_string_pretty(&report)?);
            }
        }
        Command::Simulate(args) => {
            let manifest = cmd_simulate(&args)?;
            println!("wrote {} to {}", manifest.files.join(", "), args.out.display());
        }
        Command::Experiment(args) => {
            let doc = cmd_experiment(&args)?;
            if args.out.is_none() {
                println!("{}", serde_json::to_string_pretty(&doc)?);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
