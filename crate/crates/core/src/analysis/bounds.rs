//! The constant `Gamma`, the two-sided operator bounds and the chain bound
//! behind the nonexistence argument.

use crate::combinatorics::binom_f;
use crate::error::{domain, Result};
use crate::grid::GridFunction;
use crate::operators::IntegralOperator;
use crate::system::{PowerSystemSpec, SystemSpec};

/// Default number of quadrature nodes for [`gamma_constant`].
pub const GAMMA_DEFAULT_POINTS: usize = 4001;

/// Slack granted to discrete comparisons against continuum bounds:
/// `h^2 * (1 + scale)`.
pub fn grid_slack(m: usize, scale: f64) -> f64 {
    let h = 1.0 / (m - 1) as f64;
    h * h * (1.0 + scale.abs())
}

fn check_degree(k: u32, dim: u32) -> Result<()> {
    if dim < 2 || k < 1 || k > dim {
        return domain(format!(
            "need 1 <= k <= N with N >= 2, got k = {k}, N = {dim}"
        ));
    }
    Ok(())
}

/// `Gamma(k, N) = int_{1/4}^{3/4} ( k / tau^{N-k} int_{1/4}^tau s^{N-1} / C(N-1, k-1) ds )^{1/k} dtau`.
pub fn gamma_constant(k: u32, dim: u32) -> Result<f64> {
    gamma_constant_with(k, dim, GAMMA_DEFAULT_POINTS)
}

/// [`gamma_constant`] with `points` trapezoid nodes.
///
/// The integrand behaves like `(tau - 1/4)^{1/k}` at the lower limit, so the
/// rule runs in the variable `sigma` with `tau = 1/4 + sigma^k / 2`, where the
/// integrand is smooth and the trapezoid rule is second order.
pub fn gamma_constant_with(k: u32, dim: u32, points: usize) -> Result<f64> {
    check_degree(k, dim)?;
    if points < 3 {
        return domain(format!("need at least 3 quadrature points, got {points}"));
    }
    let kf = k as f64;
    let nf = dim as f64;
    let c = binom_f(dim - 1, k - 1);
    let floor = 0.25f64.powi(dim as i32);
    let integrand = |sigma: f64| {
        let sk = sigma.powi(k as i32);
        let tau = 0.25 + 0.5 * sk;
        let inner = (tau.powi(dim as i32) - floor).max(0.0) / (nf * c);
        let g = (kf * inner / tau.powi((dim - k) as i32)).powf(1.0 / kf);
        let jacobian = 0.5 * kf * sigma.powi(k as i32 - 1);
        g * jacobian
    };
    let h = 1.0 / (points - 1) as f64;
    let interior: f64 = (1..points - 1).map(|j| integrand(j as f64 * h)).sum();
    Ok(h * (interior + 0.5 * (integrand(0.0) + integrand(1.0))))
}

/// `(1/2) (k / (N C(N-1, k-1)))^{1/k}`, always below one.
pub fn upper_bound_prefactor(k: u32, dim: u32) -> Result<f64> {
    check_degree(k, dim)?;
    let kf = k as f64;
    Ok(0.5 * (kf / (dim as f64 * binom_f(dim - 1, k - 1))).powf(1.0 / kf))
}

/// The constant `B` with `||T(v)|| <= B ||v||^rho` for a power system,
/// assembled from the per-equation prefactors raised to
/// `e_1 = 1, e_j = prod_{i<j} gamma_i / k_i`.
pub fn chain_upper_bound(spec: &PowerSystemSpec) -> Result<f64> {
    let mut bound = 1.0;
    let mut exponent = 1.0;
    for (&k, &g) in spec.k().iter().zip(spec.gamma()) {
        bound *= upper_bound_prefactor(k, spec.dim())?.powf(exponent);
        exponent *= g / k as f64;
    }
    Ok(bound)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundOutcome {
    Holds,
    Fails,
    /// The pointwise hypothesis on `f_i` does not hold on the grid, so the
    /// bound makes no claim.
    HypothesisNotSatisfied,
}

/// Result of comparing a discrete operator value against a continuum bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundCheck {
    pub outcome: BoundOutcome,
    /// Operator side.
    pub lhs: f64,
    /// Bound side.
    pub rhs: f64,
    /// Grid slack used in the comparison.
    pub slack: f64,
    /// For the upper bound: the sharper `prefactor * (eps ||v||^d)^{1/k}`.
    pub sharp_rhs: Option<f64>,
}

impl BoundCheck {
    pub fn holds(&self) -> bool {
        self.outcome == BoundOutcome::Holds
    }
}

fn check_inputs(spec: &SystemSpec, i: usize, v: &GridFunction) -> Result<()> {
    if i >= spec.n() {
        return domain(format!("equation index {i} out of range"));
    }
    if v.min_value() < 0.0 {
        return domain("bound checks need a nonnegative argument");
    }
    Ok(())
}

/// Lower bound `T_i(v)(1/4) >= Gamma_i eta^{1/k_i} (||v|| / 4)^{m / k_i}`,
/// valid when `f_i(t, v(t)) >= eta v(t)^m` on `[1/4, 3/4]`.
pub fn lower_bound_check(
    spec: &SystemSpec,
    i: usize,
    v: &GridFunction,
    eta: f64,
    m: f64,
) -> Result<BoundCheck> {
    check_inputs(spec, i, v)?;
    if !(eta > 0.0 && m > 0.0) {
        return domain("lower bound needs eta > 0 and m > 0");
    }
    let f = &spec.f()[i];
    let k = spec.k()[i];
    let mut hypothesis = true;
    for (t, &x) in v.grid().zip(v.values()) {
        if (0.25..=0.75).contains(&t) {
            let lhs = f.eval_unchecked(t, x);
            let rhs = eta * x.powf(m);
            if lhs < rhs * (1.0 - 1e-12) {
                hypothesis = false;
                break;
            }
        }
    }
    let w = IntegralOperator::new(spec, v.len())?.apply(i, v)?;
    let lhs = w.interpolate(0.25);
    let kf = k as f64;
    let rhs =
        gamma_constant(k, spec.dim())? * eta.powf(1.0 / kf) * (0.25 * v.sup_norm()).powf(m / kf);
    let slack = grid_slack(v.len(), rhs);
    let outcome = if !hypothesis {
        BoundOutcome::HypothesisNotSatisfied
    } else if lhs >= rhs - slack {
        BoundOutcome::Holds
    } else {
        BoundOutcome::Fails
    };
    Ok(BoundCheck {
        outcome,
        lhs,
        rhs,
        slack,
        sharp_rhs: None,
    })
}

/// Upper bound `sup T_i(v) < (eps ||v||^d)^{1/k_i}`, valid when
/// `f_i(t, v(t)) <= eps v(t)^d` on `[0, 1]`.
pub fn upper_bound_check(
    spec: &SystemSpec,
    i: usize,
    v: &GridFunction,
    eps: f64,
    d: f64,
) -> Result<BoundCheck> {
    check_inputs(spec, i, v)?;
    if !(eps > 0.0 && d > 0.0) {
        return domain("upper bound needs eps > 0 and d > 0");
    }
    let f = &spec.f()[i];
    let k = spec.k()[i];
    let hypothesis = v.grid().zip(v.values()).all(|(t, &x)| {
        let rhs = eps * x.powf(d);
        f.eval_unchecked(t, x) <= rhs * (1.0 + 1e-12)
    });
    let w = IntegralOperator::new(spec, v.len())?.apply(i, v)?;
    let lhs = w.sup_norm();
    let kf = k as f64;
    let rhs = (eps * v.sup_norm().powf(d)).powf(1.0 / kf);
    let sharp = upper_bound_prefactor(k, spec.dim())? * rhs;
    let slack = grid_slack(v.len(), rhs);
    let outcome = if !hypothesis {
        BoundOutcome::HypothesisNotSatisfied
    } else if lhs < rhs + slack || (lhs == 0.0 && rhs == 0.0) {
        BoundOutcome::Holds
    } else {
        BoundOutcome::Fails
    };
    Ok(BoundCheck {
        outcome,
        lhs,
        rhs,
        slack,
        sharp_rhs: Some(sharp),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nonlinearity::Nonlinearity;

    fn spec_with(f: Nonlinearity, dim: u32, k: u32) -> SystemSpec {
        SystemSpec::new(dim, vec![k, k], vec![f.clone(), f]).unwrap()
    }

    #[test]
    fn gamma_closed_form_k1_n2() {
        let exact = 0.125 - 3f64.ln() / 32.0;
        let g = gamma_constant(1, 2).unwrap();
        assert!((g - exact).abs() < 1e-8, "{g} vs {exact}");
    }

    #[test]
    fn gamma_positive_everywhere() {
        for dim in 2..=6 {
            for k in 1..=dim {
                assert!(gamma_constant(k, dim).unwrap() > 0.0);
            }
        }
        assert!(gamma_constant(3, 2).is_err());
    }

    #[test]
    fn prefactor_below_one() {
        for dim in 2..=10 {
            for k in 1..=dim {
                assert!(upper_bound_prefactor(k, dim).unwrap() < 1.0);
            }
        }
        assert!((upper_bound_prefactor(1, 2).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn chain_bound_for_laplace_pair() {
        let p = PowerSystemSpec::new(2, vec![1, 1], vec![1.0, 1.0]).unwrap();
        assert!((chain_upper_bound(&p).unwrap() - 0.0625).abs() < 1e-15);
    }

    #[test]
    fn lower_bound_examples() {
        let m = 401;
        let linear = spec_with(Nonlinearity::power(1.0).unwrap(), 2, 1);
        let cap = GridFunction::from_fn(m, |t| 1.0 - t * t).unwrap();
        assert!(lower_bound_check(&linear, 0, &cap, 1.0, 1.0)
            .unwrap()
            .holds());

        let square = spec_with(Nonlinearity::power(2.0).unwrap(), 2, 1);
        let ramp = GridFunction::from_fn(m, |t| 1.0 - t).unwrap();
        let r = lower_bound_check(&square, 0, &ramp, 1.0, 2.0).unwrap();
        assert!(r.holds() && r.lhs > r.rhs);

        let zero = GridFunction::zeros(m).unwrap();
        let r = lower_bound_check(&linear, 0, &zero, 1.0, 1.0).unwrap();
        assert!(r.holds());
        assert_eq!((r.lhs, r.rhs), (0.0, 0.0));

        let r = lower_bound_check(&linear, 0, &cap, 2.0, 1.0).unwrap();
        assert_eq!(r.outcome, BoundOutcome::HypothesisNotSatisfied);
    }

    #[test]
    fn upper_bound_examples() {
        let m = 401;
        let linear = spec_with(Nonlinearity::power(1.0).unwrap(), 2, 1);
        let cap = GridFunction::from_fn(m, |t| 1.0 - t * t).unwrap();
        let r = upper_bound_check(&linear, 0, &cap, 1.0, 1.0).unwrap();
        assert!(r.holds());
        assert!(r.rhs - r.lhs >= 0.5);
        assert!(r.lhs <= r.sharp_rhs.unwrap() + r.slack);

        let zero = GridFunction::zeros(m).unwrap();
        assert!(upper_bound_check(&linear, 0, &zero, 1.0, 2.0)
            .unwrap()
            .holds());

        let r = upper_bound_check(&linear, 0, &cap, 0.5, 1.0).unwrap();
        assert_eq!(r.outcome, BoundOutcome::HypothesisNotSatisfied);
    }
}
