use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use khessian::scenario::{exit_code_for_error, run_to_dir, RunStatus, ScenarioConfig, EXIT_CONFIG};

#[derive(Parser)]
#[command(
    name = "khessian",
    version,
    about = "Radial k-Hessian system experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the scenario described by a TOML config file.
    Run {
        config: PathBuf,
        /// Output directory for report.jsonl and solution CSVs.
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Override the grid size M.
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long)]
        quiet: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_CONFIG as u8 } else { 0 });
        }
    };
    let Command::Run {
        config,
        out,
        grid,
        quiet,
    } = cli.command;
    let mut cfg = match ScenarioConfig::load(&config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("khessian: {e}");
            return ExitCode::from(exit_code_for_error(&e) as u8);
        }
    };
    if let Some(m) = grid {
        if m < 7 {
            eprintln!("khessian: config error: --grid {m} is too small (need at least 7)");
            return ExitCode::from(EXIT_CONFIG as u8);
        }
        cfg.grid = Some(m);
    }
    match run_to_dir(&cfg, &out) {
        Ok(outcome) => {
            if !quiet {
                for r in &outcome.records {
                    let mark = match r.pass {
                        Some(true) => "ok",
                        Some(false) => "FAIL",
                        None => "-",
                    };
                    println!("{:<18} {mark}", r.kind);
                }
                println!(
                    "wrote {} records to {}",
                    outcome.records.len(),
                    out.join("report.jsonl").display()
                );
            }
            match &outcome.status {
                RunStatus::Success => {}
                RunStatus::HypothesisNotMet(why) => {
                    eprintln!("khessian: hypothesis not met: {why}")
                }
                RunStatus::NumericalFailure(why) => eprintln!("khessian: numerical failure: {why}"),
            }
            ExitCode::from(outcome.status.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("khessian: {e}");
            ExitCode::from(exit_code_for_error(&e) as u8)
        }
    }
}
