//! `T` applied to the constant forcing `f = 1` against the closed form
//! `(k / (N C(N-1, k-1)))^{1/k} (1 - t^2) / 2`.

use khessian::{binomial, GridFunction, IntegralOperator, Nonlinearity, SystemSpec};

/// Largest deviation from the closed form for each `(N, k)`.
pub fn run_example() -> khessian::Result<Vec<(u32, u32, f64)>> {
    let m = 2001;
    let mut out = Vec::new();
    for (dim, k) in [(2, 1), (2, 2), (3, 1), (3, 2), (3, 3)] {
        let one = Nonlinearity::constant(1.0)?;
        let spec = SystemSpec::new(dim, vec![k, k], vec![one.clone(), one])?;
        let op = IntegralOperator::new(&spec, m)?;
        let w = op.apply(0, &GridFunction::zeros(m)?)?;
        let c = binomial(dim as i64 - 1, k as i64 - 1)? as f64;
        let a = (k as f64 / (dim as f64 * c)).powf(1.0 / k as f64);
        let exact = GridFunction::from_fn(m, |t| a * (1.0 - t * t) / 2.0)?;
        out.push((dim, k, w.distance(&exact)?));
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> khessian::Result<()> {
    for (dim, k, err) in run_example()? {
        println!("N = {dim}, k = {k}: max error {err:.3e}");
    }
    Ok(())
}
