//! Discrete integral operators `T_i`, their composition `T`, and the forward
//! radial k-Hessian used to check residuals.
//!
//! `T_i` maps the right-hand neighbour `v_{i+1}` to
//!
//! ```text
//! T_i(v)(t) = int_t^1 ( k_i / tau^{N-k_i} * int_0^tau s^{N-1} / C(N-1, k_i-1) f_i(s, v(s)) ds )^{1/k_i} dtau
//! ```
//!
//! The inner integral is accumulated with product-trapezoid weights (the
//! weight `s^{N-1}` integrated exactly against the piecewise-linear
//! interpolant of `f_i`), the outer one with the composite trapezoid rule.
//! Both are second order; exact weights keep the `tau^{-(N-k)}` division
//! free of the `h^2 / tau^2` relative error a plain trapezoid leaves near the
//! centre.

use crate::combinatorics::binom_f;
use crate::error::{domain, Result};
use crate::grid::GridFunction;
use crate::system::SystemSpec;

/// Round-off floor below which an inner integral is treated as zero.
const INNER_CLAMP: f64 = -1e-14;

/// Precomputed quadrature weights for a grid of `M` points in dimension `N`.
#[derive(Debug, Clone)]
pub struct QuadratureTable {
    m: usize,
    dim: u32,
    /// Weight of `F_j` in the cell `[s_j, s_{j+1}]`.
    left: Vec<f64>,
    /// Weight of `F_{j+1}` in the cell `[s_j, s_{j+1}]`.
    right: Vec<f64>,
    /// `tau_j^{N-k}` is cheap; cache `tau_j` itself.
    tau: Vec<f64>,
}

impl QuadratureTable {
    pub fn new(m: usize, dim: u32) -> Result<Self> {
        if m < 3 {
            return domain(format!("quadrature needs at least 3 points, got {m}"));
        }
        let h = 1.0 / (m - 1) as f64;
        let p = dim - 1;
        let mut left = Vec::with_capacity(m - 1);
        let mut right = Vec::with_capacity(m - 1);
        for j in 0..m - 1 {
            let s = j as f64 * h;
            let (mut wl, mut wr) = (0.0, 0.0);
            // int_0^h (s + x)^p (1 - x/h) dx and int_0^h (s + x)^p x/h dx,
            // expanded binomially so no terms cancel.
            for q in 0..=p {
                let c = binom_f(p, q) * s.powi((p - q) as i32) * h.powi(q as i32 + 1);
                let q = q as f64;
                wl += c / ((q + 1.0) * (q + 2.0));
                wr += c / (q + 2.0);
            }
            left.push(wl);
            right.push(wr);
        }
        let tau = (0..m).map(|j| j as f64 / (m - 1) as f64).collect();
        Ok(Self {
            m,
            dim,
            left,
            right,
            tau,
        })
    }

    pub fn grid_size(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// Cumulative `int_0^{tau_j} s^{N-1} F(s) ds` for every grid point.
    /// The first entry is exactly zero.
    pub fn inner_cumulative(&self, forcing: &[f64]) -> Vec<f64> {
        debug_assert_eq!(forcing.len(), self.m);
        let mut acc = 0.0;
        let mut out = Vec::with_capacity(self.m);
        out.push(0.0);
        for j in 0..self.m - 1 {
            acc += self.left[j] * forcing[j] + self.right[j] * forcing[j + 1];
            out.push(acc);
        }
        out
    }

    /// Cumulative `int_{t_j}^1 g(tau) dtau`; the last entry is exactly zero.
    pub fn tail_cumulative(&self, g: &[f64]) -> Vec<f64> {
        debug_assert_eq!(g.len(), self.m);
        let half_h = 0.5 / (self.m - 1) as f64;
        let mut out = vec![0.0; self.m];
        for j in (0..self.m - 1).rev() {
            out[j] = out[j + 1] + half_h * (g[j] + g[j + 1]);
        }
        out
    }

    /// The map `F -> T(F)` shared by every equation of degree `k`.
    fn integrate(&self, k: u32, forcing: &[f64]) -> Vec<f64> {
        let inner = self.inner_cumulative(forcing);
        let scale = k as f64 / binom_f(self.dim - 1, k - 1);
        let drop = (self.dim - k) as i32;
        let inv_k = 1.0 / k as f64;
        let g: Vec<f64> = inner
            .iter()
            .zip(&self.tau)
            .enumerate()
            .map(|(j, (&i_val, &tau))| {
                if j == 0 {
                    // The inner integral is O(tau^N), so the quotient is O(tau^k).
                    return 0.0;
                }
                let i_val = if (INNER_CLAMP..0.0).contains(&i_val) {
                    0.0
                } else {
                    i_val
                };
                let base = scale * i_val / tau.powi(drop);
                if k == 1 {
                    base
                } else {
                    base.max(0.0).powf(inv_k)
                }
            })
            .collect();
        self.tail_cumulative(&g)
    }
}

/// The operators of one system on one grid.
#[derive(Debug, Clone)]
pub struct IntegralOperator {
    spec: SystemSpec,
    table: QuadratureTable,
}

impl IntegralOperator {
    pub fn new(spec: &SystemSpec, m: usize) -> Result<Self> {
        Ok(Self {
            spec: spec.clone(),
            table: QuadratureTable::new(m, spec.dim())?,
        })
    }

    pub fn spec(&self) -> &SystemSpec {
        &self.spec
    }

    pub fn grid_size(&self) -> usize {
        self.table.m
    }

    pub fn table(&self) -> &QuadratureTable {
        &self.table
    }

    fn check(&self, v: &GridFunction) -> Result<()> {
        if v.len() != self.table.m {
            return domain(format!(
                "input has {} points, operator grid has {}",
                v.len(),
                self.table.m
            ));
        }
        if let Some(j) = v.values().iter().position(|&x| x < 0.0) {
            return domain(format!(
                "negative input sample {} at index {j}",
                v.values()[j]
            ));
        }
        Ok(())
    }

    /// `T_i(v)` for the 0-based equation index `i`.
    pub fn apply(&self, i: usize, v: &GridFunction) -> Result<GridFunction> {
        if i >= self.spec.n() {
            return domain(format!(
                "equation index {i} out of range 0..{}",
                self.spec.n()
            ));
        }
        self.check(v)?;
        Ok(self.apply_unchecked(i, v))
    }

    pub(crate) fn apply_unchecked(&self, i: usize, v: &GridFunction) -> GridFunction {
        let f = &self.spec.f()[i];
        let forcing: Vec<f64> = v
            .values()
            .iter()
            .zip(&self.table.tau)
            .map(|(&x, &t)| f.eval_unchecked(t, x.max(0.0)))
            .collect();
        GridFunction::from_vec_unchecked(self.table.integrate(self.spec.k()[i], &forcing))
    }

    /// `T_i` applied to an explicit forcing vector `F_j` instead of `f_i(t_j, v_j)`.
    pub fn apply_to_forcing(&self, i: usize, forcing: &[f64]) -> Result<GridFunction> {
        if forcing.len() != self.table.m {
            return domain("forcing length does not match the grid");
        }
        if forcing.iter().any(|&x| x < 0.0 || !x.is_finite()) {
            return domain("forcing must be finite and nonnegative");
        }
        Ok(GridFunction::from_vec_unchecked(
            self.table.integrate(self.spec.k()[i], forcing),
        ))
    }

    /// The chain `v_n = T_n(v_1), ..., v_1' = T_1(v_2)`, returned in
    /// equation order `[v_1', v_2, ..., v_n]`.
    pub fn chain(&self, v1: &GridFunction) -> Result<Vec<GridFunction>> {
        self.check(v1)?;
        Ok(self.chain_unchecked(v1))
    }

    pub(crate) fn chain_unchecked(&self, v1: &GridFunction) -> Vec<GridFunction> {
        let n = self.spec.n();
        let mut out: Vec<Option<GridFunction>> = vec![None; n];
        let mut current = self.apply_unchecked(n - 1, v1);
        for i in (0..n - 1).rev() {
            let next = self.apply_unchecked(i, &current);
            out[i + 1] = Some(current);
            current = next;
        }
        out[0] = Some(current);
        out.into_iter().map(|c| c.expect("filled")).collect()
    }

    /// The composite `T = T_1 T_2 ... T_n`.
    pub fn composite(&self, v1: &GridFunction) -> Result<GridFunction> {
        self.check(v1)?;
        Ok(self.composite_unchecked(v1))
    }

    pub(crate) fn composite_unchecked(&self, v1: &GridFunction) -> GridFunction {
        let n = self.spec.n();
        let mut current = self.apply_unchecked(n - 1, v1);
        for i in (0..n - 1).rev() {
            current = self.apply_unchecked(i, &current);
        }
        current
    }
}

/// One-shot `T_i(v)` on the grid of `v`.
pub fn apply_t(spec: &SystemSpec, i: usize, v: &GridFunction) -> Result<GridFunction> {
    IntegralOperator::new(spec, v.len())?.apply(i, v)
}

/// One-shot composite `T(v_1)`.
pub fn apply_composite_t(spec: &SystemSpec, v1: &GridFunction) -> Result<GridFunction> {
    IntegralOperator::new(spec, v1.len())?.composite(v1)
}

/// One-shot chain, see [`IntegralOperator::chain`].
pub fn apply_composite_chain(spec: &SystemSpec, v1: &GridFunction) -> Result<Vec<GridFunction>> {
    IntegralOperator::new(spec, v1.len())?.chain(v1)
}

/// Pairs `(u''(t_j), u'(t_j) / t_j)` at every grid point.
///
/// Interior points use central differences. At `t = 0` the even extension
/// gives `u'(0) = 0` and `u'/t -> u''(0)`; at `t = 1` one-sided second-order
/// stencils are used.
pub fn hessian_pairs(u: &GridFunction) -> Result<Vec<(f64, f64)>> {
    let m = u.len();
    if m < 5 {
        return domain(format!(
            "finite differences need at least 5 points, got {m}"
        ));
    }
    let x = u.values();
    let h = u.h();
    let h2 = h * h;
    let mut out = Vec::with_capacity(m);
    let a0 = 2.0 * (x[1] - x[0]) / h2;
    out.push((a0, a0));
    for j in 1..m - 1 {
        let a = (x[j + 1] - 2.0 * x[j] + x[j - 1]) / h2;
        let b = (x[j + 1] - x[j - 1]) / (2.0 * h) / u.t(j);
        out.push((a, b));
    }
    let l = m - 1;
    let a = (2.0 * x[l] - 5.0 * x[l - 1] + 4.0 * x[l - 2] - x[l - 3]) / h2;
    let b = (3.0 * x[l] - 4.0 * x[l - 1] + x[l - 2]) / (2.0 * h);
    out.push((a, b));
    Ok(out)
}

/// `S_k` of the eigenvalue vector `(a, b, ..., b)` with `b` repeated `N - 1` times.
pub fn sigma_radial(k: u32, dim: u32, a: f64, b: f64) -> f64 {
    binom_f(dim - 1, k - 1) * a * b.powi(k as i32 - 1) + binom_f(dim - 1, k) * b.powi(k as i32)
}

/// Samples of `S_k(D^2 u)` for a radial `u`.
pub fn radial_hessian(u: &GridFunction, k: u32, dim: u32) -> Result<GridFunction> {
    if k < 1 || k > dim {
        return domain(format!("degree k = {k} outside 1..={dim}"));
    }
    let pairs = hessian_pairs(u)?;
    Ok(GridFunction::from_vec_unchecked(
        pairs
            .into_iter()
            .map(|(a, b)| sigma_radial(k, dim, a, b))
            .collect(),
    ))
}

/// The characterising pair `(u''(t), u'(t)/t)` of the Hessian eigenvalues at one
/// grid index; the second entry has multiplicity `N - 1`.
pub fn hessian_eigenvalue_vector(u: &GridFunction, dim: u32, index: usize) -> Result<(f64, f64)> {
    if dim < 2 {
        return domain(format!("space dimension N = {dim} must be at least 2"));
    }
    if index >= u.len() {
        return domain(format!("index {index} out of range for {} points", u.len()));
    }
    Ok(hessian_pairs(u)?[index])
}
