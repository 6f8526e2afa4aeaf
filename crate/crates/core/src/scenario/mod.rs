//! Scenario runner: configuration, experiments and report files.

mod config;
mod output;
mod run;

pub use config::{ScenarioConfig, ScenarioKind};
pub use output::{
    parse_solution_csv, read_solution_csv, report_lines, solution_csv, write_report,
    write_solution_csv, Record,
};
pub use run::{
    exit_code_for_error, run_scenario, run_to_dir, RunOutcome, RunStatus, EXIT_CONFIG,
    EXIT_HYPOTHESIS, EXIT_NUMERICAL, EXIT_OK,
};
