//! Verification of a computed solution and of a corrupted copy.

use khessian::solver::{normalized_power_iteration, rescale_to_solution};
use khessian::verify::{residual_tolerance, verify_solution, VerificationReport};
use khessian::{GridFunction, PowerSystemSpec, SolutionBundle};

pub fn run_example(m: usize) -> khessian::Result<(VerificationReport, VerificationReport)> {
    let power = PowerSystemSpec::new(2, vec![2, 2], vec![1.0, 1.0])?;
    let eig = normalized_power_iteration(
        &power.to_system(),
        &GridFunction::from_fn(m, |t| 1.0 - t * t)?,
        1e-13,
        1000,
    )?;
    let bundle = rescale_to_solution(&power, &eig)?.expect("rho < 1");
    let good = verify_solution(&bundle, residual_tolerance(m))?;

    let mut broken = bundle.v[0].clone().into_values();
    broken[m / 2] += 0.1;
    let corrupted = SolutionBundle::new(
        bundle.spec.clone(),
        vec![GridFunction::new(broken)?, bundle.v[1].clone()],
    )?;
    let bad = verify_solution(&corrupted, residual_tolerance(m))?;
    Ok((good, bad))
}

#[allow(dead_code)]
fn main() -> khessian::Result<()> {
    let (good, bad) = run_example(1001)?;
    println!(
        "solution:  pass = {}, residuals {:?}",
        good.pass, good.max_residual
    );
    println!(
        "corrupted: pass = {}, residuals {:?}",
        bad.pass, bad.max_residual
    );
    Ok(())
}
