//! Verification of candidate solutions and grid-convergence studies.

use serde::Serialize;

use crate::analysis::{admissibility_check, cone_check, convexity_margin, CONE_TOL};
use crate::error::{domain, Result};
use crate::grid::GridFunction;
use crate::operators::radial_hessian;
use crate::system::{SolutionBundle, SystemSpec};

/// Constant `C` in the residual tolerance `max(1e-6, C / M^2)`.
pub const RESIDUAL_C: f64 = 1.0;

/// Floor of the residual tolerance.
pub const RESIDUAL_FLOOR: f64 = 1e-6;

/// Absolute tolerance on the convexity (smallest eigenvalue) margin.
pub const CONVEXITY_TOL: f64 = 1e-5;

/// Relative tolerance on the k-admissibility margin, scaled by `1 + ||data||`.
pub const ADMISSIBILITY_REL_TOL: f64 = 1e-8;

/// Below this every error in a refinement study is treated as round-off.
pub const SATURATION_FLOOR: f64 = 1e-12;

/// `max(1e-6, C M^{-2})`.
pub fn residual_tolerance(m: usize) -> f64 {
    RESIDUAL_FLOOR.max(RESIDUAL_C / (m as f64 * m as f64))
}

fn check_grids(spec: &SystemSpec, v: &[GridFunction]) -> Result<usize> {
    if v.len() != spec.n() {
        return domain(format!("{} components for {} equations", v.len(), spec.n()));
    }
    let m = v[0].len();
    if v.iter().any(|c| c.len() != m) {
        return domain("components live on different grids");
    }
    if m < 7 {
        return domain(format!("verification needs at least 7 points, got {m}"));
    }
    Ok(m)
}

/// `max_j |S_{k_i}(D^2 u_i)(t_j) - f_i(t_j, v_{i+1}(t_j))|` over `j = 2..M-3`.
fn residual_of(spec: &SystemSpec, v: &[GridFunction], i: usize) -> Result<f64> {
    let m = v[i].len();
    let s = radial_hessian(&v[i].negated(), spec.k()[i], spec.dim())?;
    let next = &v[spec.next(i)];
    let f = &spec.f()[i];
    Ok((2..m - 2)
        .map(|j| (s.values()[j] - f.eval_unchecked(next.t(j), next.values()[j].max(0.0))).abs())
        .fold(0.0, f64::max))
}

/// Largest residual and smallest k_i-admissibility margin of `u_i = -v_i`.
pub fn residual_and_margin(spec: &SystemSpec, v: &[GridFunction]) -> Result<(f64, f64)> {
    check_grids(spec, v)?;
    let mut res: f64 = 0.0;
    let mut margin = f64::INFINITY;
    for i in 0..spec.n() {
        res = res.max(residual_of(spec, v, i)?);
        margin = margin.min(admissibility_check(
            &v[i].negated(),
            spec.k()[i],
            spec.dim(),
        )?);
    }
    Ok((res, margin))
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub grid_size: usize,
    pub residual_tol: f64,
    pub boundary_tol: f64,
    pub admissibility_tol: f64,
    pub convexity_tol: f64,
    pub cone_tol: f64,
    pub max_residual: Vec<f64>,
    /// `|v_i(1)|`.
    pub boundary_errors: Vec<f64>,
    /// `|v_i'(0)|` from the one-sided second-order stencil.
    pub derivative_errors: Vec<f64>,
    pub admissibility_margins: Vec<f64>,
    /// Smallest Hessian eigenvalue of `u_i`.
    pub convexity_margins: Vec<f64>,
    pub cone_margins: Vec<f64>,
    pub residual_pass: bool,
    pub boundary_pass: bool,
    pub admissibility_pass: bool,
    pub cone_pass: bool,
    /// Full convexity of every `u_i`. Reported, not part of `pass`.
    pub convex: bool,
    pub pass: bool,
}

/// Checks a bundle against a residual tolerance `tol`; boundary errors use
/// the same tolerance.
pub fn verify_solution(bundle: &SolutionBundle, tol: f64) -> Result<VerificationReport> {
    if !(tol > 0.0) {
        return domain(format!("tolerance {tol} must be positive"));
    }
    let spec = &bundle.spec;
    let v = &bundle.v;
    let m = check_grids(spec, v)?;
    let n = spec.n();
    let h = v[0].h();
    let data = bundle.norm();
    // Margins share the residual's stencil error near t = 1, where f can vanish.
    let admissibility_tol = tol.max(ADMISSIBILITY_REL_TOL * (1.0 + data));

    let mut report = VerificationReport {
        grid_size: m,
        residual_tol: tol,
        boundary_tol: tol,
        admissibility_tol,
        convexity_tol: CONVEXITY_TOL,
        cone_tol: CONE_TOL,
        max_residual: Vec::with_capacity(n),
        boundary_errors: Vec::with_capacity(n),
        derivative_errors: Vec::with_capacity(n),
        admissibility_margins: Vec::with_capacity(n),
        convexity_margins: Vec::with_capacity(n),
        cone_margins: Vec::with_capacity(n),
        residual_pass: true,
        boundary_pass: true,
        admissibility_pass: true,
        cone_pass: true,
        convex: true,
        pass: true,
    };
    for i in 0..n {
        let x = v[i].values();
        let r = residual_of(spec, v, i)?;
        let b = x[m - 1].abs();
        let d = ((-3.0 * x[0] + 4.0 * x[1] - x[2]) / (2.0 * h)).abs();
        let u = v[i].negated();
        let a = admissibility_check(&u, spec.k()[i], spec.dim())?;
        let c = convexity_margin(&u)?;
        let cone = cone_check(&v[i]);
        report.residual_pass &= r <= tol;
        report.boundary_pass &= b <= tol && d <= tol;
        report.admissibility_pass &= a >= -admissibility_tol;
        report.cone_pass &= cone.in_cone;
        report.convex &= c >= -CONVEXITY_TOL;
        report.max_residual.push(r);
        report.boundary_errors.push(b);
        report.derivative_errors.push(d);
        report.admissibility_margins.push(a);
        report.convexity_margins.push(c);
        report
            .cone_margins
            .push(cone.margin.min(cone.nonneg_margin));
    }
    report.pass = report.residual_pass
        && report.boundary_pass
        && report.admissibility_pass
        && report.cone_pass;
    Ok(report)
}

/// Outcome of a grid-refinement study.
#[derive(Debug, Clone, Serialize)]
pub struct RichardsonReport {
    pub sizes: Vec<usize>,
    pub errors: Vec<f64>,
    /// Least-squares slope of `log(error)` against `log(h)`.
    pub order: f64,
    /// Every error is at round-off level, so `order` carries no information.
    pub saturated: bool,
}

/// Observed convergence order of `error_at(M)` over nested grid sizes.
pub fn richardson_order(
    sizes: &[usize],
    mut error_at: impl FnMut(usize) -> Result<f64>,
) -> Result<RichardsonReport> {
    if sizes.len() < 3 {
        return domain(format!("need at least 3 grid sizes, got {}", sizes.len()));
    }
    for w in sizes.windows(2) {
        let (a, b) = (w[0], w[1]);
        if a < 3 || b <= a || (b - 1) % (a - 1) != 0 {
            return domain(format!("grid sizes {a} and {b} are not nested"));
        }
    }
    let errors = sizes
        .iter()
        .map(|&m| error_at(m))
        .collect::<Result<Vec<_>>>()?;
    let saturated = errors.iter().all(|&e| e.abs() <= SATURATION_FLOOR);
    let xs: Vec<f64> = sizes.iter().map(|&m| (1.0 / (m - 1) as f64).ln()).collect();
    let ys: Vec<f64> = errors
        .iter()
        .map(|&e| e.abs().max(f64::MIN_POSITIVE).ln())
        .collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(RichardsonReport {
        sizes: sizes.to_vec(),
        errors,
        order: sxy / sxx,
        saturated,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nonlinearity::Nonlinearity;

    fn constant_pair(dim: u32, k: u32) -> SystemSpec {
        let f = Nonlinearity::constant(1.0).unwrap();
        SystemSpec::new(dim, vec![k, k], vec![f.clone(), f]).unwrap()
    }

    fn closed_form(dim: u32, k: u32, m: usize) -> GridFunction {
        let c = crate::combinatorics::binom_f(dim - 1, k - 1);
        let a = (k as f64 / (dim as f64 * c)).powf(1.0 / k as f64);
        GridFunction::from_fn(m, |t| a * (1.0 - t * t) / 2.0).unwrap()
    }

    #[test]
    fn exact_constant_forcing_passes() {
        for (dim, k) in [(2, 1), (2, 2), (3, 2)] {
            let spec = constant_pair(dim, k);
            let v = closed_form(dim, k, 401);
            let b = SolutionBundle::new(spec, vec![v.clone(), v]).unwrap();
            let r = verify_solution(&b, residual_tolerance(401)).unwrap();
            assert!(r.pass, "{r:?}");
            assert!(r.convex);
            assert!(r.max_residual.iter().all(|&x| x < 1e-8));
        }
    }

    #[test]
    fn zero_bundle_passes() {
        let f = Nonlinearity::power(2.0).unwrap();
        let spec = SystemSpec::new(2, vec![1, 1], vec![f.clone(), f]).unwrap();
        let z = GridFunction::zeros(101).unwrap();
        let b = SolutionBundle::new(spec, vec![z.clone(), z]).unwrap();
        let r = verify_solution(&b, 1e-6).unwrap();
        assert!(r.pass);
        assert!(r.max_residual.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn corrupted_bundle_fails() {
        let spec = constant_pair(2, 1);
        let v = closed_form(2, 1, 401);
        let mut w = v.clone().into_values();
        w[200] += 0.1;
        let w = GridFunction::new(w).unwrap();
        let b = SolutionBundle::new(spec, vec![w, v]).unwrap();
        assert!(!verify_solution(&b, residual_tolerance(401)).unwrap().pass);
    }

    #[test]
    fn richardson_on_known_rates() {
        let r =
            richardson_order(&[11, 21, 41, 81], |m| Ok(3.0 / ((m - 1) as f64).powi(2))).unwrap();
        assert!((r.order - 2.0).abs() < 1e-12);
        assert!(!r.saturated);
        let r = richardson_order(&[11, 21, 41], |_| Ok(1e-16)).unwrap();
        assert!(r.saturated);
        assert!(richardson_order(&[11, 21], |_| Ok(1.0)).is_err());
        assert!(richardson_order(&[11, 20, 41], |_| Ok(1.0)).is_err());
    }
}
