//! Two fixed points of `f(v) = eps (v^{1/2} + v^3)`: sublinear at zero and
//! superlinear at infinity. The norm profile crosses the diagonal twice.

use khessian::analysis::{cone_check, multiplicity_thresholds, ThresholdCase};
use khessian::solver::{norm_profile_scan, PolishStatus, ProfileSettings};
use khessian::{Nonlinearity, SystemSpec};

pub struct MultiplicitySummary {
    pub threshold_lhs: f64,
    pub threshold_rhs: f64,
    pub brackets: usize,
    /// `(norm, polish status, in cone)` per root.
    pub roots: Vec<(f64, PolishStatus, bool)>,
}

pub fn run_example(eps: f64) -> khessian::Result<MultiplicitySummary> {
    let f = Nonlinearity::from_triples(&[(eps, 0.0, 0.5), (eps, 0.0, 3.0)])?;
    let spec = SystemSpec::new(2, vec![1, 1], vec![f.clone(), f])?;
    let chain = multiplicity_thresholds(&spec, ThresholdCase::Small { r0: 1.0 })?;
    let profile = norm_profile_scan(&spec, 1e-4, 1e4, 48, &ProfileSettings::default())?;
    let roots = profile
        .roots
        .iter()
        .map(|r| (r.radius, r.polish, cone_check(&r.solution.v[0]).in_cone))
        .collect();
    Ok(MultiplicitySummary {
        threshold_lhs: chain.lhs,
        threshold_rhs: chain.rhs,
        brackets: profile.brackets.len(),
        roots,
    })
}

#[allow(dead_code)]
fn main() -> khessian::Result<()> {
    let s = run_example(0.5)?;
    println!("r0 = {} > G_1 = {:.6}", s.threshold_lhs, s.threshold_rhs);
    println!("{} brackets", s.brackets);
    for (r, polish, in_cone) in s.roots {
        println!("  fixed point of norm {r:.6e} ({polish:?}), in cone: {in_cone}");
    }
    Ok(())
}
