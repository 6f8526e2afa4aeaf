//! Growth regimes of a few nonlinearity families.

use khessian::analysis::{classify_growth, GrowthCondition};
use khessian::{Nonlinearity, SystemSpec};

pub fn run_example() -> khessian::Result<Vec<(&'static str, GrowthCondition)>> {
    let pair = |f: Nonlinearity, k: u32| SystemSpec::new(2, vec![k, k], vec![f.clone(), f]);
    let cases = [
        ("v^(1/2)", pair(Nonlinearity::power(0.5)?, 1)?),
        ("v^3", pair(Nonlinearity::power(3.0)?, 1)?),
        (
            "v^(1/2) + v^3",
            pair(
                Nonlinearity::from_triples(&[(1.0, 0.0, 0.5), (1.0, 0.0, 3.0)])?,
                1,
            )?,
        ),
        (
            "v^3 + v^(1/2), k = 2",
            pair(
                Nonlinearity::from_triples(&[(1.0, 0.0, 0.5), (1.0, 0.0, 3.0)])?,
                2,
            )?,
        ),
        ("v", pair(Nonlinearity::power(1.0)?, 1)?),
        (
            "t v^(1/2)",
            pair(Nonlinearity::from_triples(&[(1.0, 1.0, 0.5)])?, 1)?,
        ),
    ];
    Ok(cases
        .into_iter()
        .map(|(name, spec)| (name, classify_growth(&spec).condition))
        .collect())
}

#[allow(dead_code)]
fn main() -> khessian::Result<()> {
    for (name, condition) in run_example()? {
        println!("{name:<22} {condition:?}");
    }
    Ok(())
}
