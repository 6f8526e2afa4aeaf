//! Grid-convergence orders of the discrete operator, the constant `Gamma`
//! and the solution residual.

use khessian::analysis::gamma_constant_with;
use khessian::solver::{normalized_power_iteration, rescale_to_solution};
use khessian::verify::{richardson_order, RichardsonReport};
use khessian::{GridFunction, IntegralOperator, Nonlinearity, PowerSystemSpec, SystemSpec};

pub struct Orders {
    pub operator: RichardsonReport,
    pub constant_forcing: RichardsonReport,
    pub gamma: RichardsonReport,
    pub residual: RichardsonReport,
}

/// `T(t^2)` for `N = 3, k = 2` against `(k/((N+2)C))^{1/k} (1 - t^{2+2/k}) / (2+2/k)`.
fn operator_error(m: usize) -> khessian::Result<f64> {
    let f = Nonlinearity::from_triples(&[(1.0, 2.0, 0.0)])?;
    let spec = SystemSpec::new(3, vec![2, 2], vec![f.clone(), f])?;
    let w = IntegralOperator::new(&spec, m)?.apply(0, &GridFunction::zeros(m)?)?;
    let (k, dim, c): (f64, f64, f64) = (2.0, 3.0, 2.0);
    let p = 2.0 + 2.0 / k;
    let a = (k / ((dim + 2.0) * c)).powf(1.0 / k) / p;
    w.distance(&GridFunction::from_fn(m, |t| a * (1.0 - t.powf(p)))?)
}

fn constant_error(m: usize) -> khessian::Result<f64> {
    let one = Nonlinearity::constant(1.0)?;
    let spec = SystemSpec::new(2, vec![1, 1], vec![one.clone(), one])?;
    let w = IntegralOperator::new(&spec, m)?.apply(0, &GridFunction::zeros(m)?)?;
    w.distance(&GridFunction::from_fn(m, |t| (1.0 - t * t) / 4.0)?)
}

fn residual(m: usize) -> khessian::Result<f64> {
    let power = PowerSystemSpec::new(2, vec![2, 2], vec![1.0, 1.0])?;
    let eig = normalized_power_iteration(
        &power.to_system(),
        &GridFunction::from_fn(m, |t| 1.0 - t * t)?,
        1e-13,
        1000,
    )?;
    Ok(rescale_to_solution(&power, &eig)?
        .expect("rho < 1")
        .residual)
}

pub fn run_example() -> khessian::Result<Orders> {
    let sizes = [251, 501, 1001];
    let reference = gamma_constant_with(2, 3, 64_001)?;
    Ok(Orders {
        operator: richardson_order(&sizes, operator_error)?,
        constant_forcing: richardson_order(&sizes, constant_error)?,
        gamma: richardson_order(&[101, 201, 401], |m| {
            Ok((gamma_constant_with(2, 3, m)? - reference).abs())
        })?,
        residual: richardson_order(&sizes, residual)?,
    })
}

#[allow(dead_code)]
fn main() -> khessian::Result<()> {
    let o = run_example()?;
    for (name, r) in [
        ("T(t^2)", &o.operator),
        ("T(1)", &o.constant_forcing),
        ("Gamma", &o.gamma),
        ("residual", &o.residual),
    ] {
        println!(
            "{name:<10} order {:>6.3} saturated {} errors {:?}",
            r.order, r.saturated, r.errors
        );
    }
    Ok(())
}
