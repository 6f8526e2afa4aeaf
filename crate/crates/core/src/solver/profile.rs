//! Norm profile `G(r) = ||T(v_r)||` over norm-pinned shapes `v_r`, and the
//! roots of `G(r) = r`.
//!
//! A shape `v_r` with `||v_r|| = r` and `T(v_r) / ||T(v_r)|| = v_r / r`
//! satisfies `T(v_r) = v_r` exactly when `G(r) = r`, so roots of `G(r) - r`
//! are fixed points whether or not Picard iteration is attracted to them.

use super::picard::{default_damping, picard_solve, IterationStatus};
use crate::analysis::{cone_check_with, CONE_TOL};
use crate::error::{domain, Result};
use crate::grid::GridFunction;
use crate::operators::IntegralOperator;
use crate::system::{SolutionBundle, SystemSpec};

#[derive(Debug, Clone, Copy)]
pub struct ProfileSettings {
    pub grid_size: usize,
    /// Shape tolerance of the norm-pinned iteration (relative to `r`).
    pub inner_tol: f64,
    pub inner_max_iter: usize,
    /// Relative bracket width at which bisection stops.
    pub bisection_tol: f64,
    pub polish_tol: f64,
    pub polish_max_iter: usize,
}

impl Default for ProfileSettings {
    fn default() -> Self {
        Self {
            grid_size: crate::grid::DEFAULT_GRID,
            inner_tol: 1e-12,
            inner_max_iter: 2000,
            bisection_tol: 1e-12,
            polish_tol: 1e-11,
            polish_max_iter: 5000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PolishStatus {
    /// Picard iteration from the candidate converged back to it.
    Picard,
    /// Picard iteration left the candidate (a repelling fixed point); the
    /// bisection candidate is kept.
    Bisection,
    /// The candidate lies outside the cone, where Picard iteration is not
    /// started; the bisection candidate is kept.
    OutsideCone,
}

#[derive(Debug, Clone)]
pub struct ProfileRoot {
    pub bracket: (f64, f64),
    /// Norm of the fixed point.
    pub radius: f64,
    /// `|G(r) - r| / r` at the candidate.
    pub defect: f64,
    pub polish: PolishStatus,
    pub solution: SolutionBundle,
}

#[derive(Debug, Clone)]
pub struct NormProfile {
    pub radii: Vec<f64>,
    pub values: Vec<f64>,
    /// Whether the inner iteration converged at each radius.
    pub converged: Vec<bool>,
    pub brackets: Vec<(f64, f64)>,
    pub roots: Vec<ProfileRoot>,
}

struct Pinned<'a> {
    op: &'a IntegralOperator,
    settings: &'a ProfileSettings,
}

impl Pinned<'_> {
    /// Runs `v <- r T(v) / ||T(v)||` from `start`; returns the shape, `G(r)` and
    /// the convergence flag.
    fn run(&self, r: f64, start: &GridFunction) -> (GridFunction, f64, bool) {
        let mut v = start.scaled(r / start.sup_norm());
        for _ in 0..self.settings.inner_max_iter {
            let tv = self.op.composite_unchecked(&v);
            let g = tv.sup_norm();
            if !(g > 0.0 && g.is_finite()) {
                return (v, g, false);
            }
            let next = tv.scaled(r / g);
            let delta = next.distance(&v).unwrap_or(f64::INFINITY);
            v = next;
            if delta <= self.settings.inner_tol * r {
                let g = self.op.composite_unchecked(&v).sup_norm();
                return (v, g, true);
            }
        }
        let g = self.op.composite_unchecked(&v).sup_norm();
        (v, g, false)
    }
}

pub fn norm_profile_scan(
    spec: &SystemSpec,
    r_min: f64,
    r_max: f64,
    points: usize,
    settings: &ProfileSettings,
) -> Result<NormProfile> {
    if !(r_min > 0.0 && r_max > r_min && r_max.is_finite()) {
        return domain(format!("need 0 < r_min < r_max, got [{r_min}, {r_max}]"));
    }
    if points < 8 {
        return domain(format!("need at least 8 radii, got {points}"));
    }
    let op = IntegralOperator::new(spec, settings.grid_size)?;
    let pinned = Pinned { op: &op, settings };
    let (la, lb) = (r_min.ln(), r_max.ln());
    let radii: Vec<f64> = (0..points)
        .map(|j| (la + (lb - la) * j as f64 / (points - 1) as f64).exp())
        .collect();
    let mut shape = GridFunction::from_fn(settings.grid_size, |t| 1.0 - t * t)?;
    let mut values = Vec::with_capacity(points);
    let mut converged = Vec::with_capacity(points);
    let mut shapes = Vec::with_capacity(points);
    for &r in &radii {
        let (v, g, ok) = pinned.run(r, &shape);
        if ok {
            shape = v.clone();
        }
        values.push(g);
        converged.push(ok);
        shapes.push(v);
    }

    let mut brackets = Vec::new();
    let mut roots = Vec::new();
    let mut last: Option<usize> = None;
    for j in 0..points {
        if !converged[j] {
            continue;
        }
        if let Some(i) = last {
            let (fa, fb) = (values[i] - radii[i], values[j] - radii[j]);
            if fa * fb <= 0.0
                && !(fa == 0.0 && brackets.last().map(|b: &(f64, f64)| b.1) == Some(radii[i]))
            {
                brackets.push((radii[i], radii[j]));
                roots.push(refine(
                    spec,
                    &pinned,
                    (radii[i], radii[j]),
                    fa,
                    &shapes[i],
                    settings,
                )?);
            }
        }
        last = Some(j);
    }
    Ok(NormProfile {
        radii,
        values,
        converged,
        brackets,
        roots,
    })
}

fn refine(
    spec: &SystemSpec,
    pinned: &Pinned<'_>,
    bracket: (f64, f64),
    fa: f64,
    start: &GridFunction,
    settings: &ProfileSettings,
) -> Result<ProfileRoot> {
    let (mut a, mut b) = bracket;
    let sign_a = fa.signum();
    let mut shape = start.clone();
    let (mut best_r, mut best_defect, mut best_shape) = (a, f64::INFINITY, start.clone());
    for _ in 0..200 {
        let r = (a * b).sqrt();
        let (v, g, ok) = pinned.run(r, &shape);
        if ok {
            shape = v.clone();
        }
        let d = g - r;
        if (d / r).abs() < best_defect {
            best_defect = (d / r).abs();
            best_r = r;
            best_shape = v;
        }
        if d == 0.0 {
            break;
        }
        if d.signum() == sign_a {
            a = r;
        } else {
            b = r;
        }
        if (b / a).ln() < settings.bisection_tol {
            break;
        }
    }
    let op = pinned.op;
    let candidate = SolutionBundle::new(spec.clone(), op.chain_unchecked(&best_shape))?;
    // Picard iteration is only defined on the cone; a candidate outside it
    // is kept as found.
    if !cone_check_with(&best_shape, CONE_TOL * (1.0 + best_r)).in_cone {
        let polish = PolishStatus::OutsideCone;
        return Ok(ProfileRoot {
            bracket,
            radius: best_r,
            defect: best_defect,
            polish,
            solution: candidate,
        });
    }
    let polished = picard_solve(
        spec,
        &best_shape,
        default_damping(spec),
        settings.polish_tol,
        settings.polish_max_iter,
    )?;
    let stayed = polished.status == IterationStatus::Converged
        && polished.final_iterate.distance(&best_shape)? <= 1e-6 * best_r;
    let (polish, solution) = match (stayed, polished.solution) {
        (true, Some(s)) => (PolishStatus::Picard, s),
        _ => (PolishStatus::Bisection, candidate),
    };
    Ok(ProfileRoot {
        bracket,
        radius: best_r,
        defect: best_defect,
        polish,
        solution,
    })
}
