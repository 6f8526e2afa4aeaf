//! The parameter relation of the critical eigenvalue problem
//! `S_{k_i}(D^2 u_i) = lambda_i (-u_{i+1})^{gamma_i}` and the substitutions
//! that remove the parameters from equations `2..n`.

use serde::Serialize;

use super::eigen::EigenResult;
use crate::error::{domain, Result};
use crate::grid::GridFunction;
use crate::system::PowerSystemSpec;

#[derive(Debug, Clone, Serialize)]
pub struct LambdaRelation {
    pub lambda: Vec<f64>,
    /// `e_1 = 1, e_j = prod_{i<j} gamma_i / prod_{2<=i<=j} k_i`.
    pub exponents: Vec<f64>,
    /// `prod_j lambda_j^{e_j}`.
    pub product: f64,
    /// `lambda0^{k_1}`.
    pub target: f64,
    pub rel_error: f64,
    pub rel_tol: f64,
    pub holds: bool,
}

fn check(spec: &PowerSystemSpec, lambda: &[f64]) -> Result<()> {
    if !spec.is_critical() {
        return domain(format!(
            "parameter relation needs rho = 1, got {}",
            spec.rho()
        ));
    }
    if lambda.len() != spec.n() {
        return domain(format!(
            "{} parameters for {} equations",
            lambda.len(),
            spec.n()
        ));
    }
    if lambda.iter().any(|l| !(l.is_finite() && *l > 0.0)) {
        return domain("parameters must be positive");
    }
    Ok(())
}

pub fn lambda_relation_exponents(spec: &PowerSystemSpec) -> Vec<f64> {
    let mut e = vec![1.0];
    let mut acc = 1.0;
    for j in 1..spec.n() {
        acc *= spec.gamma()[j - 1] / spec.k()[j] as f64;
        e.push(acc);
    }
    e
}

/// Compares `prod_j lambda_j^{e_j}` with `lambda0^{k_1}`.
pub fn lambda_relation_check(
    spec: &PowerSystemSpec,
    lambda: &[f64],
    eig: &EigenResult,
    rel_tol: f64,
) -> Result<LambdaRelation> {
    check(spec, lambda)?;
    let exponents = lambda_relation_exponents(spec);
    let product: f64 = lambda
        .iter()
        .zip(&exponents)
        .map(|(l, e)| l.powf(*e))
        .product();
    let target = eig.lambda0.powi(spec.k()[0] as i32);
    let rel_error = (product - target).abs() / target;
    Ok(LambdaRelation {
        lambda: lambda.to_vec(),
        exponents,
        product,
        target,
        rel_error,
        rel_tol,
        holds: rel_error <= rel_tol,
    })
}

/// `Lambda_n = lambda_n`, `Lambda_j = lambda_j Lambda_{j+1}^{gamma_j / k_{j+1}}`;
/// `Lambda_1` equals the relation product.
pub fn lambda_scaling(spec: &PowerSystemSpec, lambda: &[f64]) -> Result<Vec<f64>> {
    check(spec, lambda)?;
    let n = spec.n();
    let mut big = vec![0.0; n];
    big[n - 1] = lambda[n - 1];
    for j in (0..n - 1).rev() {
        big[j] = lambda[j] * big[j + 1].powf(spec.gamma()[j] / spec.k()[j + 1] as f64);
    }
    Ok(big)
}

/// Maps a solution `v` of the parametrised system to `w` with
/// `w_1 = v_1`, `w_j = Lambda_j^{-1/k_j} v_j`, which solves the system with
/// parameters `(Lambda_1, 1, ..., 1)`.
pub fn to_lambda_free(
    spec: &PowerSystemSpec,
    lambda: &[f64],
    v: &[GridFunction],
) -> Result<(Vec<GridFunction>, f64)> {
    let big = lambda_scaling(spec, lambda)?;
    Ok((apply_factors(spec, &big, v, -1.0)?, big[0]))
}

/// Inverse of [`to_lambda_free`].
pub fn from_lambda_free(
    spec: &PowerSystemSpec,
    lambda: &[f64],
    w: &[GridFunction],
) -> Result<Vec<GridFunction>> {
    let big = lambda_scaling(spec, lambda)?;
    apply_factors(spec, &big, w, 1.0)
}

fn apply_factors(
    spec: &PowerSystemSpec,
    big: &[f64],
    v: &[GridFunction],
    sign: f64,
) -> Result<Vec<GridFunction>> {
    if v.len() != spec.n() {
        return domain(format!("{} components for {} equations", v.len(), spec.n()));
    }
    Ok(v.iter()
        .enumerate()
        .map(|(j, c)| {
            if j == 0 {
                c.clone()
            } else {
                c.scaled(big[j].powf(sign / spec.k()[j] as f64))
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eig(lambda0: f64) -> EigenResult {
        EigenResult {
            phi: GridFunction::constant(3, 1.0).unwrap(),
            mu: 1.0 / lambda0,
            lambda0,
            shape_delta: 0.0,
            residual: 0.0,
            iterations: 0,
            converged: true,
        }
    }

    #[test]
    fn laplace_pair_relations() {
        let spec = PowerSystemSpec::new(3, vec![1, 1], vec![1.0, 1.0]).unwrap();
        let l0 = 97.4;
        let e = eig(l0);
        assert!(
            lambda_relation_check(&spec, &[l0, 1.0], &e, 1e-12)
                .unwrap()
                .holds
        );
        assert!(
            lambda_relation_check(&spec, &[l0.sqrt(), l0.sqrt()], &e, 1e-12)
                .unwrap()
                .holds
        );
        assert!(
            !lambda_relation_check(&spec, &[1.1 * l0, 1.0], &e, 1e-6)
                .unwrap()
                .holds
        );
    }

    #[test]
    fn exponents_and_scaling_agree() {
        let spec = PowerSystemSpec::new(3, vec![1, 2, 3], vec![2.0, 3.0, 1.0]).unwrap();
        let e = lambda_relation_exponents(&spec);
        assert_eq!(e, vec![1.0, 1.0, 1.0]);
        let lambda = [2.0, 3.0, 5.0];
        let big = lambda_scaling(&spec, &lambda).unwrap();
        let product: f64 = lambda.iter().zip(&e).map(|(l, x)| l.powf(*x)).product();
        assert!((big[0] - product).abs() < 1e-12 * product);
    }

    #[test]
    fn round_trip() {
        let spec = PowerSystemSpec::new(2, vec![1, 2], vec![2.0, 1.0]).unwrap();
        let v = vec![
            GridFunction::constant(5, 2.0).unwrap(),
            GridFunction::constant(5, 3.0).unwrap(),
        ];
        let (w, _) = to_lambda_free(&spec, &[1.5, 0.7], &v).unwrap();
        let back = from_lambda_free(&spec, &[1.5, 0.7], &w).unwrap();
        for (a, b) in back.iter().zip(&v) {
            assert!(a.distance(b).unwrap() < 1e-14);
        }
    }

    #[test]
    fn needs_critical_spec() {
        let spec = PowerSystemSpec::new(2, vec![1, 1], vec![0.5, 1.0]).unwrap();
        assert!(lambda_relation_check(&spec, &[1.0, 1.0], &eig(1.0), 1e-6).is_err());
    }
}
