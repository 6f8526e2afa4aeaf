use crate::grid::GridFunction;

/// Default absolute tolerance for cone membership.
pub const CONE_TOL: f64 = 1e-12;

/// Membership report for the cone
/// `K = { v >= 0, min_{[1/4, 3/4]} v >= ||v|| / 4 }`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeReport {
    pub in_cone: bool,
    /// `min_{[1/4, 3/4]} v - ||v|| / 4` over grid points in the closed interval.
    pub margin: f64,
    /// `min_t v(t)`.
    pub nonneg_margin: f64,
}

pub fn cone_check(v: &GridFunction) -> ConeReport {
    cone_check_with(v, CONE_TOL)
}

pub fn cone_check_with(v: &GridFunction, tol: f64) -> ConeReport {
    let eps = 1e-12;
    let middle_min = v
        .grid()
        .zip(v.values())
        .filter(|(t, _)| *t >= 0.25 - eps && *t <= 0.75 + eps)
        .map(|(_, &x)| x)
        .fold(f64::INFINITY, f64::min);
    let margin = middle_min - 0.25 * v.sup_norm();
    let nonneg_margin = v.min_value();
    ConeReport {
        in_cone: nonneg_margin >= -tol && margin >= -tol,
        margin,
        nonneg_margin,
    }
}
