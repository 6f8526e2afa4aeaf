//! Normalized power iteration `v <- T(v) / ||T(v)||` and the exact rescaling
//! of power systems.

use serde::Serialize;

use crate::analysis::{cone_check_with, CONE_TOL};
use crate::error::{domain, Error, Result};
use crate::grid::GridFunction;
use crate::operators::IntegralOperator;
use crate::system::{PowerSystemSpec, SolutionBundle, SystemSpec};

#[derive(Debug, Clone, Serialize)]
pub struct EigenResult {
    /// Normalized shape, `||phi|| = 1`.
    #[serde(skip)]
    pub phi: GridFunction,
    /// `||T(phi)||`.
    pub mu: f64,
    /// `1 / mu`.
    pub lambda0: f64,
    /// Sup-norm of the last shape update.
    pub shape_delta: f64,
    /// `||T(phi) - mu phi||`.
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
}

pub fn normalized_power_iteration(
    spec: &SystemSpec,
    init: &GridFunction,
    tol: f64,
    max_iter: usize,
) -> Result<EigenResult> {
    let norm = init.sup_norm();
    if norm == 0.0 {
        return domain("power iteration needs a nonzero start");
    }
    if !cone_check_with(init, CONE_TOL * (1.0 + norm)).in_cone {
        return domain("initial guess is not in the cone K");
    }
    let op = IntegralOperator::new(spec, init.len())?;
    let mut phi = init.scaled(1.0 / norm);
    let mut delta = f64::INFINITY;
    let mut iterations = 0;
    while iterations < max_iter {
        iterations += 1;
        let tv = op.composite_unchecked(&phi);
        let mu = tv.sup_norm();
        if !(mu > 0.0) || !mu.is_finite() {
            return Err(Error::Degenerate(format!(
                "T maps the iterate to norm {mu}"
            )));
        }
        let next = tv.scaled(1.0 / mu);
        delta = next.distance(&phi)?;
        phi = next;
        if delta <= tol {
            break;
        }
    }
    let tv = op.composite_unchecked(&phi);
    let mu = tv.sup_norm();
    if !(mu > 0.0) {
        return Err(Error::Degenerate("T maps the shape to zero".into()));
    }
    let residual = tv.distance(&phi.scaled(mu))?;
    Ok(EigenResult {
        phi,
        mu,
        lambda0: 1.0 / mu,
        shape_delta: delta,
        residual,
        iterations,
        converged: delta <= tol,
    })
}

/// The fixed point `c phi` with `c = mu^{1/(1 - rho)}`, or `None` in the
/// critical case, where no nonzero fixed point exists.
pub fn rescale_to_solution(
    spec: &PowerSystemSpec,
    eig: &EigenResult,
) -> Result<Option<SolutionBundle>> {
    if spec.is_critical() {
        return Ok(None);
    }
    let c = rescale_factor(spec.rho(), eig.mu);
    let v1 = eig.phi.scaled(c);
    let system = spec.to_system();
    let op = IntegralOperator::new(&system, v1.len())?;
    let mut parts = op.chain(&v1)?;
    parts[0] = v1;
    Ok(Some(SolutionBundle::new(system, parts)?))
}

pub(crate) fn rescale_factor(rho: f64, mu: f64) -> f64 {
    mu.powf(1.0 / (1.0 - rho))
}
