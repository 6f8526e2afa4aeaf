use crate::error::{domain, Result};

/// Exact binomial coefficient `a` choose `b`.
///
/// Uses the multiplicative formula in 128-bit arithmetic; every
/// intermediate product `C(a, i) * (a - i)` stays below `2^128` for `a <= 64`.
pub fn binomial(a: i64, b: i64) -> Result<u64> {
    if b < 0 || b > a {
        return domain(format!("binomial({a}, {b}) requires 0 <= b <= a"));
    }
    if a > 64 {
        return domain(format!(
            "binomial({a}, {b}) exceeds the supported range a <= 64"
        ));
    }
    let b = b.min(a - b) as u128;
    let a = a as u128;
    let mut acc: u128 = 1;
    for i in 0..b {
        acc = acc * (a - i) / (i + 1);
    }
    Ok(acc as u64)
}

/// Binomial coefficient as a float, for indices already known to be valid.
pub(crate) fn binom_f(a: u32, b: u32) -> f64 {
    if b > a {
        return 0.0;
    }
    binomial(a as i64, b as i64).expect("valid binomial indices") as f64
}
