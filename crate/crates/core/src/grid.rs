//! Samples of radial profiles on the uniform grid `t_j = j / (M - 1)`.

use crate::error::{domain, Result};

/// Default number of grid points.
pub const DEFAULT_GRID: usize = 1001;

/// A radial profile sampled on a uniform grid over `[0, 1]`.
///
/// Values may be of either sign (`u = -v` is stored in the same type), but
/// they are always finite and there are at least three of them.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 3 {
            return domain(format!(
                "grid needs at least 3 points, got {}",
                values.len()
            ));
        }
        if let Some(j) = values.iter().position(|x| !x.is_finite()) {
            return domain(format!("non-finite sample at index {j}"));
        }
        Ok(Self { values })
    }

    /// Samples `f` at every grid point.
    pub fn from_fn(m: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        if m < 3 {
            return domain(format!("grid needs at least 3 points, got {m}"));
        }
        let last = (m - 1) as f64;
        Self::new((0..m).map(|j| f(j as f64 / last)).collect())
    }

    pub fn zeros(m: usize) -> Result<Self> {
        Self::from_fn(m, |_| 0.0)
    }

    pub fn constant(m: usize, c: f64) -> Result<Self> {
        Self::from_fn(m, |_| c)
    }

    /// Internal constructor for values produced by the crate's own kernels.
    pub(crate) fn from_vec_unchecked(values: Vec<f64>) -> Self {
        debug_assert!(values.len() >= 3);
        Self { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Grid spacing `1 / (M - 1)`.
    pub fn h(&self) -> f64 {
        1.0 / (self.values.len() - 1) as f64
    }

    pub fn t(&self, j: usize) -> f64 {
        j as f64 / (self.values.len() - 1) as f64
    }

    pub fn grid(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.values.len()).map(|j| self.t(j))
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// `sup_t |v(t)|` over the grid.
    pub fn sup_norm(&self) -> f64 {
        sup_norm(self)
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self::from_vec_unchecked(self.values.iter().map(|x| c * x).collect())
    }

    pub fn negated(&self) -> Self {
        self.scaled(-1.0)
    }

    /// Sup-norm distance to another function on the same grid.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        if self.len() != other.len() {
            return domain(format!("grid mismatch: {} vs {}", self.len(), other.len()));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    /// Linear interpolation at an arbitrary `t` in `[0, 1]`.
    pub fn interpolate(&self, t: f64) -> f64 {
        let m = self.values.len();
        let x = t.clamp(0.0, 1.0) * (m - 1) as f64;
        let j = (x.floor() as usize).min(m - 2);
        let w = x - j as f64;
        (1.0 - w) * self.values[j] + w * self.values[j + 1]
    }

    /// Restriction to a coarser nested grid with `m` points, `(M - 1)` a
    /// multiple of `(m - 1)`.
    pub fn restrict(&self, m: usize) -> Result<Self> {
        let big = self.values.len() - 1;
        if m < 3 || !big.is_multiple_of(m - 1) {
            return domain(format!(
                "grid of {} points does not nest {m} points",
                big + 1
            ));
        }
        let stride = big / (m - 1);
        Ok(Self::from_vec_unchecked(
            self.values.iter().step_by(stride).copied().collect(),
        ))
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Maximum absolute sample.
pub fn sup_norm(v: &GridFunction) -> f64 {
    v.values.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}
