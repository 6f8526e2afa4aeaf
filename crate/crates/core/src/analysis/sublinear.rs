//! The `u0`-sublinearity sandwich with `u0(t) = 1 - t`.

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::grid::GridFunction;
use crate::operators::IntegralOperator;
use crate::system::PowerSystemSpec;

#[derive(Debug, Clone, Serialize)]
pub struct SublinearityReport {
    pub rho: f64,
    pub xi: f64,
    /// Largest `theta1` with `theta1 (1 - t) <= T(v)(t)`.
    pub theta1: f64,
    /// Smallest `theta2` with `T(v)(t) <= theta2 (1 - t)`.
    pub theta2: f64,
    /// `xi^{rho - 1} - 1`.
    pub eta_analytic: f64,
    /// `min_t T(xi v)(t) / (xi T(v)(t)) - 1` over points where `T(v)` is
    /// resolvable.
    pub eta_observed: f64,
    /// `sup |T(xi v) - xi^rho T(v)| / sup T(xi v)`.
    pub homogeneity_error: f64,
    /// `T(xi v) >= (1 + eta) xi T(v)` on the grid up to round-off.
    pub superlinear_holds: bool,
    /// `min_{i, t} v_i(t) - v_i(0) (1 - t)` over the chain outputs.
    pub chord_margin: f64,
}

impl SublinearityReport {
    pub fn holds(&self) -> bool {
        self.theta1 > 0.0
            && self.theta1 <= self.theta2
            && self.eta_analytic > 0.0
            && self.superlinear_holds
    }
}

fn sandwich(w: &GridFunction) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi: f64 = 0.0;
    for j in 0..w.len() - 1 {
        let r = w.values()[j] / (1.0 - w.t(j));
        lo = lo.min(r);
        hi = hi.max(r);
    }
    (lo, hi)
}

pub fn u0_sublinearity_check(
    spec: &PowerSystemSpec,
    v: &GridFunction,
    xi: f64,
) -> Result<SublinearityReport> {
    let rho = spec.rho();
    if rho >= 1.0 - crate::system::CRITICAL_RHO_TOL {
        return Err(Error::Hypothesis(format!(
            "uniqueness needs prod(gamma) < prod(k), got rho = {rho}"
        )));
    }
    if !(xi > 0.0 && xi < 1.0) {
        return domain(format!("xi = {xi} must lie in (0, 1)"));
    }
    if v.sup_norm() == 0.0 || v.min_value() < 0.0 {
        return domain("sublinearity check needs a nonzero nonnegative v");
    }
    let op = IntegralOperator::new(&spec.to_system(), v.len())?;
    let chain = op.chain(v)?;
    let tv = &chain[0];
    let txv = op.composite(&v.scaled(xi))?;
    let (theta1, theta2) = sandwich(tv);

    let eta_analytic = xi.powf(rho - 1.0) - 1.0;
    let scale = xi.powf(rho);
    let mut diff: f64 = 0.0;
    let mut eta_observed = f64::INFINITY;
    let floor = 1e-12 * tv.sup_norm();
    let mut superlinear_holds = true;
    for (&a, &b) in txv.values().iter().zip(tv.values()) {
        diff = diff.max((a - scale * b).abs());
        if b > floor {
            eta_observed = eta_observed.min(a / (xi * b) - 1.0);
        }
        if a < (1.0 + eta_analytic) * xi * b * (1.0 - 1e-12) - 1e-300 {
            superlinear_holds = false;
        }
    }
    let homogeneity_error = if txv.sup_norm() > 0.0 {
        diff / txv.sup_norm()
    } else {
        diff
    };

    let mut chord_margin = f64::INFINITY;
    for w in &chain {
        let w0 = w.values()[0];
        for (t, &x) in w.grid().zip(w.values()) {
            chord_margin = chord_margin.min(x - w0 * (1.0 - t));
        }
    }
    Ok(SublinearityReport {
        rho,
        xi,
        theta1,
        theta2,
        eta_analytic,
        eta_observed,
        homogeneity_error,
        superlinear_holds,
        chord_margin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(k: Vec<u32>, gamma: Vec<f64>, dim: u32) -> PowerSystemSpec {
        PowerSystemSpec::new(dim, k, gamma).unwrap()
    }

    #[test]
    fn sublinear_pair_eta() {
        let spec = pair(vec![1, 1], vec![0.5, 0.5], 2);
        let v = GridFunction::from_fn(401, |t| 1.0 - t * t).unwrap();
        let r = u0_sublinearity_check(&spec, &v, 0.5).unwrap();
        assert!((r.eta_analytic - (0.5f64.powf(-0.75) - 1.0)).abs() < 1e-15);
        assert!((r.eta_analytic - 0.6818).abs() < 1e-4);
        assert!((r.eta_observed - r.eta_analytic).abs() < 1e-10);
        assert!(r.homogeneity_error < 1e-12);
        assert!(r.theta1 > 0.0 && r.theta1 <= r.theta2);
        assert!(r.holds());
    }

    #[test]
    fn eta_vanishes_as_xi_tends_to_one() {
        let spec = pair(vec![1, 1], vec![0.5, 0.5], 2);
        let v = GridFunction::constant(101, 1.0).unwrap();
        let r = u0_sublinearity_check(&spec, &v, 1.0 - 1e-9).unwrap();
        assert!(r.eta_analytic > 0.0 && r.eta_analytic < 1e-8);
    }

    #[test]
    fn critical_spec_is_rejected() {
        let spec = pair(vec![1, 1], vec![1.0, 1.0], 2);
        let v = GridFunction::constant(101, 1.0).unwrap();
        assert!(matches!(
            u0_sublinearity_check(&spec, &v, 0.5),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn bad_xi_is_rejected() {
        let spec = pair(vec![1, 1], vec![0.5, 0.5], 2);
        let v = GridFunction::constant(101, 1.0).unwrap();
        assert!(u0_sublinearity_check(&spec, &v, 1.5).is_err());
        assert!(u0_sublinearity_check(&spec, &GridFunction::zeros(101).unwrap(), 0.5).is_err());
    }
}
