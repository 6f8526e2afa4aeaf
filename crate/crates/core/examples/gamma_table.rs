//! The lower-bound constant `Gamma(k, N)` for small dimensions.

use khessian::analysis::{gamma_constant, upper_bound_prefactor};

pub fn run_example() -> khessian::Result<Vec<(u32, u32, f64, f64)>> {
    let mut rows = Vec::new();
    for dim in 2..=4 {
        for k in 1..=dim {
            rows.push((
                k,
                dim,
                gamma_constant(k, dim)?,
                upper_bound_prefactor(k, dim)?,
            ));
        }
    }
    Ok(rows)
}

#[allow(dead_code)]
fn main() -> khessian::Result<()> {
    println!("{:>2} {:>2} {:>14} {:>14}", "k", "N", "Gamma", "prefactor");
    for (k, dim, gamma, pre) in run_example()? {
        println!("{k:>2} {dim:>2} {gamma:>14.10} {pre:>14.10}");
    }
    println!(
        "closed form (k = 1, N = 2): {:.10}",
        0.125 - 3f64.ln() / 32.0
    );
    Ok(())
}
