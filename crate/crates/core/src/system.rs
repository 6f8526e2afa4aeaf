//! Problem instances: the general coupled system and its power-law special case.

use crate::error::{domain, Result};
use crate::grid::GridFunction;
use crate::nonlinearity::{Nonlinearity, Term};

/// Tolerance used to decide `rho == 1` for power systems.
pub const CRITICAL_RHO_TOL: f64 = 1e-12;

/// The coupled system `S_{k_i}(D^2 u_i) = f_i(|x|, -u_{i+1})` on the unit
/// ball of `R^N`, indices taken cyclically (`u_{n+1} = u_1`).
#[derive(Debug, Clone, PartialEq)]
pub struct SystemSpec {
    dim: u32,
    k: Vec<u32>,
    f: Vec<Nonlinearity>,
}

impl SystemSpec {
    pub fn new(dim: u32, k: Vec<u32>, f: Vec<Nonlinearity>) -> Result<Self> {
        if dim < 2 {
            return domain(format!("space dimension N = {dim} must be at least 2"));
        }
        if k.len() < 2 {
            return domain(format!("need at least 2 equations, got {}", k.len()));
        }
        if k.len() != f.len() {
            return domain(format!(
                "{} degrees but {} nonlinearities",
                k.len(),
                f.len()
            ));
        }
        if let Some(&bad) = k.iter().find(|&&ki| ki < 1 || ki > dim) {
            return domain(format!("degree k = {bad} outside 1..={dim}"));
        }
        Ok(Self { dim, k, f })
    }

    /// Number of equations `n`.
    pub fn n(&self) -> usize {
        self.k.len()
    }

    /// Space dimension `N`.
    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn k(&self) -> &[u32] {
        &self.k
    }

    pub fn f(&self) -> &[Nonlinearity] {
        &self.f
    }

    pub fn all_vanish_at_zero(&self) -> bool {
        self.f.iter().all(Nonlinearity::vanishes_at_zero)
    }

    /// Index of the function feeding equation `i` (0-based, cyclic).
    pub fn next(&self, i: usize) -> usize {
        (i + 1) % self.n()
    }
}

/// `S_{k_i}(D^2 u_i) = (-u_{i+1})^{gamma_i}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSystemSpec {
    dim: u32,
    k: Vec<u32>,
    gamma: Vec<f64>,
    rho: f64,
}

impl PowerSystemSpec {
    pub fn new(dim: u32, k: Vec<u32>, gamma: Vec<f64>) -> Result<Self> {
        if k.len() != gamma.len() {
            return domain(format!("{} degrees but {} exponents", k.len(), gamma.len()));
        }
        if let Some(&g) = gamma.iter().find(|g| !(g.is_finite() && **g > 0.0)) {
            return domain(format!("exponent gamma = {g} must be positive"));
        }
        // Validates N, n and the degrees.
        let probe: Vec<Nonlinearity> = gamma
            .iter()
            .map(|&g| Nonlinearity::power(g))
            .collect::<Result<_>>()?;
        SystemSpec::new(dim, k.clone(), probe)?;
        let rho = homogeneity_ratio(&k, &gamma);
        Ok(Self { dim, k, gamma, rho })
    }

    pub fn n(&self) -> usize {
        self.k.len()
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn k(&self) -> &[u32] {
        &self.k
    }

    pub fn gamma(&self) -> &[f64] {
        &self.gamma
    }

    /// `rho = prod(gamma_i) / prod(k_i)`.
    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn is_critical(&self) -> bool {
        (self.rho - 1.0).abs() <= CRITICAL_RHO_TOL
    }

    /// The general-system view with `f_i(t, v) = v^{gamma_i}`.
    pub fn to_system(&self) -> SystemSpec {
        self.scaled_system(&vec![1.0; self.n()])
            .expect("validated at construction")
    }

    /// The parametrised system `S_{k_i}(D^2 u_i) = lambda_i (-u_{i+1})^{gamma_i}`.
    pub fn scaled_system(&self, lambda: &[f64]) -> Result<SystemSpec> {
        if lambda.len() != self.n() {
            return domain(format!(
                "{} parameters for {} equations",
                lambda.len(),
                self.n()
            ));
        }
        if let Some(&l) = lambda.iter().find(|l| !(l.is_finite() && **l > 0.0)) {
            return domain(format!("parameter lambda = {l} must be positive"));
        }
        let f = self
            .gamma
            .iter()
            .zip(lambda)
            .map(|(&g, &l)| Nonlinearity::new(vec![Term::new(l, 0.0, g)]))
            .collect::<Result<Vec<_>>>()?;
        SystemSpec::new(self.dim, self.k.clone(), f)
    }
}

fn homogeneity_ratio(k: &[u32], gamma: &[f64]) -> f64 {
    // Interleave the factors so long chains neither overflow nor underflow.
    k.iter().zip(gamma).map(|(&ki, &g)| g / ki as f64).product()
}

/// A candidate solution `(v_1, ..., v_n)` with `v_i = -u_i`.
#[derive(Debug, Clone)]
pub struct SolutionBundle {
    pub v: Vec<GridFunction>,
    pub spec: SystemSpec,
    /// Largest ODE residual over all equations.
    pub residual: f64,
    /// Smallest k_i-admissibility margin over all equations.
    pub admissibility_margin: f64,
}

impl SolutionBundle {
    /// Assembles a bundle and fills the residual and admissibility fields.
    pub fn new(spec: SystemSpec, v: Vec<GridFunction>) -> Result<Self> {
        if v.len() != spec.n() {
            return domain(format!("{} components for {} equations", v.len(), spec.n()));
        }
        let m = v[0].len();
        if v.iter().any(|c| c.len() != m) {
            return domain("components live on different grids");
        }
        for (i, c) in v.iter().enumerate() {
            if *c.values().last().unwrap() != 0.0 {
                return domain(format!("component {} does not vanish at t = 1", i + 1));
            }
            if c.min_value() < 0.0 {
                return domain(format!("component {} has negative samples", i + 1));
            }
        }
        let (residual, admissibility_margin) = crate::verify::residual_and_margin(&spec, &v)?;
        Ok(Self {
            v,
            spec,
            residual,
            admissibility_margin,
        })
    }

    pub fn grid_size(&self) -> usize {
        self.v[0].len()
    }

    /// Sum of component sup-norms (the product-space norm).
    pub fn norm(&self) -> f64 {
        self.v.iter().map(GridFunction::sup_norm).sum()
    }

    /// `u_i = -v_i`.
    pub fn u(&self) -> Vec<GridFunction> {
        self.v.iter().map(GridFunction::negated).collect()
    }
}
