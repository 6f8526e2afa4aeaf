//! The critical eigenvalue `lambda0` of the Laplace pair `-Delta u_1 = lambda u_2`,
//! `-Delta u_2 = u_1`, whose radial value is the square of the first
//! Dirichlet eigenvalue of the ball.

use khessian::solver::{lambda_relation_check, normalized_power_iteration};
use khessian::{GridFunction, PowerSystemSpec};

pub struct EigenSummary {
    pub dim: u32,
    pub lambda0: f64,
    pub iterations: usize,
    pub relation_holds: bool,
}

pub fn run_example(m: usize) -> khessian::Result<Vec<EigenSummary>> {
    let mut out = Vec::new();
    for dim in [2, 3] {
        let spec = PowerSystemSpec::new(dim, vec![1, 1], vec![1.0, 1.0])?;
        let start = GridFunction::from_fn(m, |t| 1.0 - t * t)?;
        let eig = normalized_power_iteration(&spec.to_system(), &start, 1e-13, 1000)?;
        let split = eig.lambda0.sqrt();
        let rel = lambda_relation_check(&spec, &[split, split], &eig, 1e-12)?;
        out.push(EigenSummary {
            dim,
            lambda0: eig.lambda0,
            iterations: eig.iterations,
            relation_holds: rel.holds,
        });
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> khessian::Result<()> {
    for s in run_example(4001)? {
        println!(
            "N = {}: lambda0 = {:.6} after {} iterations, split parameters satisfy the relation: {}",
            s.dim, s.lambda0, s.iterations, s.relation_holds
        );
    }
    println!("pi^4 = {:.6}", std::f64::consts::PI.powi(4));
    Ok(())
}
