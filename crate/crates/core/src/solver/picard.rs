//! Damped Picard iteration `v <- (1 - w) v + w T(v)`.

use serde::Serialize;

use crate::analysis::{cone_check_with, CONE_TOL};
use crate::error::{domain, Result};
use crate::grid::GridFunction;
use crate::operators::IntegralOperator;
use crate::system::{SolutionBundle, SystemSpec};

/// The iterate has collapsed once `||v|| < COLLAPSE_RATIO ||init||`.
pub const COLLAPSE_RATIO: f64 = 1e-10;

/// The iterate has diverged once `||v||` exceeds this.
pub const DIVERGENCE_NORM: f64 = 1e10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IterationStatus {
    Converged,
    CollapsedToZero,
    Diverged,
    MaxIter,
}

#[derive(Debug, Clone)]
pub struct IterationReport {
    pub status: IterationStatus,
    pub iterations: usize,
    pub norm_history: Vec<f64>,
    /// Sup-norm of the last update.
    pub final_delta: f64,
    pub final_iterate: GridFunction,
    /// Present when the status is `Converged`.
    pub solution: Option<SolutionBundle>,
}

/// `1.0` when every nonlinearity is a single monomial, `0.5` otherwise.
pub fn default_damping(spec: &SystemSpec) -> f64 {
    if spec.f().iter().all(|f| f.active_terms().count() <= 1) {
        1.0
    } else {
        0.5
    }
}

pub fn picard_solve(
    spec: &SystemSpec,
    init: &GridFunction,
    damping: f64,
    tol: f64,
    max_iter: usize,
) -> Result<IterationReport> {
    if !(damping > 0.0 && damping <= 1.0) {
        return domain(format!("damping {damping} outside (0, 1]"));
    }
    if !(tol > 0.0) {
        return domain(format!("tolerance {tol} must be positive"));
    }
    let init_norm = init.sup_norm();
    if !cone_check_with(init, CONE_TOL * (1.0 + init_norm)).in_cone {
        return domain("initial guess is not in the cone K");
    }
    let op = IntegralOperator::new(spec, init.len())?;
    let mut v = init.clone();
    let mut history = vec![init_norm];
    let mut delta = f64::INFINITY;
    let mut status = IterationStatus::MaxIter;
    let mut iterations = 0;
    while iterations < max_iter {
        iterations += 1;
        let tv = op.composite_unchecked(&v);
        let next = if damping == 1.0 {
            tv
        } else {
            let blended: Vec<f64> = v
                .values()
                .iter()
                .zip(tv.values())
                .map(|(&a, &b)| (1.0 - damping) * a + damping * b)
                .collect();
            GridFunction::from_vec_unchecked(blended)
        };
        delta = next.distance(&v)?;
        let norm = next.sup_norm();
        v = next;
        history.push(norm);
        if !norm.is_finite() || norm > DIVERGENCE_NORM {
            status = IterationStatus::Diverged;
            break;
        }
        if init_norm > 0.0 && norm < COLLAPSE_RATIO * init_norm {
            status = IterationStatus::CollapsedToZero;
            break;
        }
        // A small absolute update while the iterate keeps shrinking by a fixed
        // factor is a collapse in progress, not convergence.
        let shrinking = norm > 0.0 && delta > tol.sqrt() * norm;
        if delta <= tol * (1.0 + norm) && !shrinking {
            status = IterationStatus::Converged;
            break;
        }
    }
    let solution = if status == IterationStatus::Converged {
        Some(SolutionBundle::new(spec.clone(), op.chain_unchecked(&v))?)
    } else {
        None
    };
    Ok(IterationReport {
        status,
        iterations,
        norm_history: history,
        final_delta: delta,
        final_iterate: v,
        solution,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::PowerSystemSpec;

    #[test]
    fn zero_start_is_a_fixed_point() {
        let spec = PowerSystemSpec::new(2, vec![1, 1], vec![0.5, 0.5])
            .unwrap()
            .to_system();
        let z = GridFunction::zeros(101).unwrap();
        let r = picard_solve(&spec, &z, 1.0, 1e-10, 10).unwrap();
        assert_eq!(r.status, IterationStatus::Converged);
        assert_eq!(r.iterations, 1);
        assert_eq!(r.solution.unwrap().norm(), 0.0);
    }

    #[test]
    fn critical_power_collapses() {
        let spec = PowerSystemSpec::new(2, vec![1, 1], vec![1.0, 1.0])
            .unwrap()
            .to_system();
        let v = GridFunction::from_fn(201, |t| 1.0 - t * t).unwrap();
        let r = picard_solve(&spec, &v, 1.0, 1e-10, 1000).unwrap();
        assert_eq!(r.status, IterationStatus::CollapsedToZero);
    }

    #[test]
    fn superlinear_large_start_diverges() {
        let spec = PowerSystemSpec::new(2, vec![1, 1], vec![3.0, 3.0])
            .unwrap()
            .to_system();
        let v = GridFunction::from_fn(201, |t| 100.0 * (1.0 - t * t)).unwrap();
        let r = picard_solve(&spec, &v, 1.0, 1e-10, 1000).unwrap();
        assert_eq!(r.status, IterationStatus::Diverged);
    }

    #[test]
    fn rejects_start_outside_cone() {
        let spec = PowerSystemSpec::new(2, vec![1, 1], vec![0.5, 0.5])
            .unwrap()
            .to_system();
        let v = GridFunction::from_fn(101, |t| (1.0 - t).powi(4)).unwrap();
        assert!(picard_solve(&spec, &v, 1.0, 1e-10, 10).is_err());
        let c = GridFunction::constant(101, 1.0).unwrap();
        assert!(picard_solve(&spec, &c, 0.0, 1e-10, 10).is_err());
    }
}
