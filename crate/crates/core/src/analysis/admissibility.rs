//! k-admissibility and convexity margins of radial functions.

use crate::error::{domain, Result};
use crate::grid::GridFunction;
use crate::operators::{hessian_pairs, sigma_radial};

/// `min_{t, l = 1..k} S_l(u'', u'/t, ..., u'/t)` over the grid.
///
/// `u` is k-admissible iff the margin is `>= -tol`.
pub fn admissibility_check(u: &GridFunction, k: u32, dim: u32) -> Result<f64> {
    if k < 1 || k > dim {
        return domain(format!("degree k = {k} outside 1..={dim}"));
    }
    let pairs = hessian_pairs(u)?;
    let mut margin = f64::INFINITY;
    for &(a, b) in &pairs {
        for l in 1..=k {
            margin = margin.min(sigma_radial(l, dim, a, b));
        }
    }
    Ok(margin)
}

/// Smallest Hessian eigenvalue `min(u'', u'/t)` over the grid.
pub fn convexity_margin(u: &GridFunction) -> Result<f64> {
    Ok(hessian_pairs(u)?
        .into_iter()
        .map(|(a, b)| a.min(b))
        .fold(f64::INFINITY, f64::min))
}
