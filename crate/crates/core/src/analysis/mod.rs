//! Cone membership, explicit constants and bounds, growth classification,
//! sublinearity and admissibility checks.

mod admissibility;
mod bounds;
mod cone;
mod growth;
mod sublinear;
mod thresholds;

pub use admissibility::{admissibility_check, convexity_margin};
pub use bounds::{
    chain_upper_bound, gamma_constant, gamma_constant_with, grid_slack, lower_bound_check,
    upper_bound_check, upper_bound_prefactor, BoundCheck, BoundOutcome, GAMMA_DEFAULT_POINTS,
};
pub use cone::{cone_check, cone_check_with, ConeReport, CONE_TOL};
pub use growth::{classify_growth, GrowthClass, GrowthCondition};
pub use sublinear::{u0_sublinearity_check, SublinearityReport};
pub use thresholds::{multiplicity_thresholds, ThresholdCase, ThresholdChain, THRESHOLD_T_POINTS};
