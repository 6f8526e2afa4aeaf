//! Fixed-point machinery: Picard iteration, normalized power iteration,
//! norm-profile scans and the parameter relation of the critical case.

mod eigen;
mod picard;
mod profile;
mod scaling;
mod starts;

pub use eigen::{normalized_power_iteration, rescale_to_solution, EigenResult};
pub use picard::{
    default_damping, picard_solve, IterationReport, IterationStatus, COLLAPSE_RATIO,
    DIVERGENCE_NORM,
};
pub use profile::{norm_profile_scan, NormProfile, PolishStatus, ProfileRoot, ProfileSettings};
pub use scaling::{
    from_lambda_free, lambda_relation_check, lambda_relation_exponents, lambda_scaling,
    to_lambda_free, LambdaRelation,
};
pub use starts::{random_cone_function, random_cone_start, seeded_rng};
