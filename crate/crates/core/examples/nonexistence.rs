//! Critical power systems: the operator norm on the cone is below one, so
//! Picard iteration collapses to zero.

use khessian::analysis::chain_upper_bound;
use khessian::solver::{normalized_power_iteration, picard_solve, IterationStatus};
use khessian::{GridFunction, PowerSystemSpec};

pub struct NonexistenceRow {
    pub dim: u32,
    pub k: Vec<u32>,
    pub mu: f64,
    pub bound: f64,
    pub collapsed: bool,
}

pub fn run_example(m: usize) -> khessian::Result<Vec<NonexistenceRow>> {
    let cases = [
        (2, vec![1, 1], vec![1.0, 1.0]),
        (2, vec![2, 2], vec![2.0, 2.0]),
        (3, vec![1, 2], vec![2.0, 1.0]),
    ];
    let mut rows = Vec::new();
    for (dim, k, gamma) in cases {
        let power = PowerSystemSpec::new(dim, k.clone(), gamma)?;
        let spec = power.to_system();
        let start = GridFunction::from_fn(m, |t| 5.0 * (1.0 - t * t))?;
        let eig = normalized_power_iteration(&spec, &start, 1e-12, 1000)?;
        let run = picard_solve(&spec, &start, 1.0, 1e-12, 10_000)?;
        rows.push(NonexistenceRow {
            dim,
            k,
            mu: eig.mu,
            bound: chain_upper_bound(&power)?,
            collapsed: run.status == IterationStatus::CollapsedToZero,
        });
    }
    Ok(rows)
}

#[allow(dead_code)]
fn main() -> khessian::Result<()> {
    for r in run_example(1001)? {
        println!(
            "N = {}, k = {:?}: mu = {:.6} <= B = {:.6}, collapsed: {}",
            r.dim, r.k, r.mu, r.bound, r.collapsed
        );
    }
    Ok(())
}
