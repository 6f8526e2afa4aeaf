//! Parameters of the critical system: the relation product and the
//! substitutions that move every parameter into the first equation.

use khessian::solver::{
    lambda_relation_check, lambda_scaling, normalized_power_iteration, picard_solve,
    IterationStatus,
};
use khessian::{GridFunction, PowerSystemSpec};

/// `(lambda, relation holds, mu of the scaled system, Picard status)`.
/// `(lambda, relation holds, mu of the scaled system, Picard status)`.
pub type Row = (Vec<f64>, bool, f64, IterationStatus);

pub fn run_example(m: usize) -> khessian::Result<Vec<Row>> {
    let power = PowerSystemSpec::new(2, vec![1, 1], vec![1.0, 1.0])?;
    let eig = normalized_power_iteration(
        &power.to_system(),
        &GridFunction::from_fn(m, |t| 1.0 - t * t)?,
        1e-13,
        1000,
    )?;
    let l0 = eig.lambda0;
    let mut rows = Vec::new();
    for lambda in [
        vec![l0, 1.0],
        vec![l0.sqrt(), l0.sqrt()],
        vec![1.1 * l0, 1.0],
        vec![0.9 * l0, 1.0],
    ] {
        let rel = lambda_relation_check(&power, &lambda, &eig, 1e-9)?;
        debug_assert!(
            (lambda_scaling(&power, &lambda)?[0] - rel.product).abs() <= 1e-12 * rel.product
        );
        let scaled = power.scaled_system(&lambda)?;
        let mu = normalized_power_iteration(&scaled, &eig.phi, 1e-12, 1000)?.mu;
        let status = picard_solve(&scaled, &eig.phi, 1.0, 1e-11, 20_000)?.status;
        rows.push((lambda, rel.holds, mu, status));
    }
    Ok(rows)
}

#[allow(dead_code)]
fn main() -> khessian::Result<()> {
    for (lambda, holds, mu, status) in run_example(1001)? {
        println!("lambda = {lambda:?}: relation {holds}, scaled mu = {mu:.9}, Picard {status:?}");
    }
    Ok(())
}
