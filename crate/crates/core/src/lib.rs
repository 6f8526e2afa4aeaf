//! Radial positive solutions of coupled k-Hessian systems on the unit ball.
//!
//! The system `S_{k_i}(D^2 u_i) = f_i(|x|, -u_{i+1})`, `u_i = 0` on the
//! boundary, is reduced to the radial ODE chain and recast as the fixed-point
//! problem `v = T(v)` on a cone of nonnegative functions (`v_i = -u_i`).
//! The crate provides the discrete operators, the explicit constants and
//! structural checks, fixed-point solvers, verification, and a scenario
//! runner.

// `!(x > 0.0)` is used on purpose so NaN takes the error branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod combinatorics;
pub mod error;
pub mod grid;
pub mod nonlinearity;
pub mod operators;
pub mod scenario;
pub mod solver;
pub mod system;
pub mod verify;

pub use combinatorics::binomial;
pub use error::{Error, Result};
pub use grid::{sup_norm, GridFunction, DEFAULT_GRID};
pub use nonlinearity::{eval_nonlinearity, Nonlinearity, Term};
pub use operators::{
    apply_composite_chain, apply_composite_t, apply_t, radial_hessian, IntegralOperator,
};
pub use system::{PowerSystemSpec, SolutionBundle, SystemSpec};
