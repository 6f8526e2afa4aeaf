//! A scenario driven from an in-memory config, as the command-line tool does.

use khessian::scenario::{report_lines, run_scenario, ScenarioConfig};

pub const CONFIG: &str = r#"
scenario = "uniqueness"
N = 2
k = [2, 2]
gamma = [1.0, 1.0]
M = 501
seed = 3
"#;

pub fn run_example() -> khessian::Result<(i32, String)> {
    let config = ScenarioConfig::from_toml(CONFIG)?;
    let outcome = run_scenario(&config)?;
    Ok((outcome.status.exit_code(), report_lines(&outcome.records)?))
}

#[allow(dead_code)]
fn main() -> khessian::Result<()> {
    let (code, lines) = run_example()?;
    for line in lines.lines() {
        println!("{}", &line[..line.len().min(120)]);
    }
    println!("exit code {code}");
    Ok(())
}
