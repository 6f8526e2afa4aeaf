//! Threshold chains `G`, `G~` and `E` behind the two multiplicity regimes.
//!
//! Box extrema use monotonicity in `v` (maxima at the upper corner, minima at
//! the lower one) and a uniform search over `t`.

use serde::Serialize;

use super::bounds::gamma_constant;
use crate::error::{domain, Result};
use crate::nonlinearity::Nonlinearity;
use crate::system::SystemSpec;

/// Number of `t` samples per box.
pub const THRESHOLD_T_POINTS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ThresholdCase {
    /// Sublinear at zero and superlinear at infinity; uses `r0`.
    Small { r0: f64 },
    /// Superlinear at zero and sublinear at infinity; uses `R0`.
    Large { big_r0: f64 },
}

#[derive(Debug, Clone, Serialize)]
pub struct ThresholdChain {
    pub case: ThresholdCase,
    /// `G_1..G_n` (case `Small`), index `i - 1`.
    pub g: Vec<f64>,
    /// `G~_2..G~_n` (case `Large`), index `i - 1`; entry 0 unused and `None`.
    pub g_tilde: Vec<Option<f64>>,
    /// `E_1..E_n` (case `Large`).
    pub e: Vec<f64>,
    /// `Gamma_i` for every equation.
    pub gamma: Vec<f64>,
    /// Left and right sides of the threshold comparison.
    pub lhs: f64,
    pub rhs: f64,
    /// `r0 > G_1^{1/k_1}` or `R0 < Gamma_1 E_1^{1/k_1}`.
    pub satisfied: bool,
    /// Some `E` box had its lower `v` endpoint above the upper one.
    pub empty_box: bool,
}

fn linspace(a: f64, b: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |j| a + (b - a) * j as f64 / (n - 1) as f64)
}

fn box_max(f: &Nonlinearity, v_hi: f64) -> f64 {
    linspace(0.0, 1.0, THRESHOLD_T_POINTS)
        .map(|t| f.eval_unchecked(t, v_hi))
        .fold(f64::NEG_INFINITY, f64::max)
}

fn box_min(f: &Nonlinearity, v_lo: f64) -> f64 {
    linspace(0.25, 0.75, THRESHOLD_T_POINTS)
        .map(|t| f.eval_unchecked(t, v_lo))
        .fold(f64::INFINITY, f64::min)
}

pub fn multiplicity_thresholds(spec: &SystemSpec, case: ThresholdCase) -> Result<ThresholdChain> {
    let n = spec.n();
    let k: Vec<f64> = spec.k().iter().map(|&x| x as f64).collect();
    let f = spec.f();
    let gamma = spec
        .k()
        .iter()
        .map(|&ki| gamma_constant(ki, spec.dim()))
        .collect::<Result<Vec<_>>>()?;
    let mut chain = ThresholdChain {
        case,
        g: Vec::new(),
        g_tilde: vec![None; n],
        e: Vec::new(),
        gamma: gamma.clone(),
        lhs: 0.0,
        rhs: 0.0,
        satisfied: false,
        empty_box: false,
    };
    match case {
        ThresholdCase::Small { r0 } => {
            if !(r0 > 0.0 && r0.is_finite()) {
                return domain(format!("r0 = {r0} must be positive"));
            }
            let mut g = vec![0.0; n];
            g[n - 1] = box_max(&f[n - 1], r0 / 4.0);
            for i in (0..n - 1).rev() {
                g[i] = box_max(&f[i], g[i + 1].powf(1.0 / k[i + 1]));
            }
            chain.lhs = r0;
            chain.rhs = g[0].powf(1.0 / k[0]);
            chain.satisfied = chain.lhs > chain.rhs;
            chain.g = g;
        }
        ThresholdCase::Large { big_r0 } => {
            if !(big_r0 > 0.0 && big_r0.is_finite()) {
                return domain(format!("R0 = {big_r0} must be positive"));
            }
            let mut gt = vec![None; n];
            gt[n - 1] = Some(box_max(&f[n - 1], big_r0));
            for i in (1..n - 1).rev() {
                let upper = gt[i + 1].expect("filled").powf(1.0 / k[i + 1]);
                gt[i] = Some(box_max(&f[i], upper));
            }
            let mut e = vec![0.0; n];
            e[n - 1] = box_min(&f[n - 1], big_r0 / 4.0);
            for i in (0..n - 1).rev() {
                let lo = 0.25 * gamma[i + 1] * e[i + 1].powf(1.0 / k[i + 1]);
                let hi = gt[i + 1].expect("filled").powf(1.0 / k[i + 1]);
                if lo > hi {
                    chain.empty_box = true;
                }
                e[i] = box_min(&f[i], lo);
            }
            chain.lhs = big_r0;
            chain.rhs = gamma[0] * e[0].powf(1.0 / k[0]);
            chain.satisfied = chain.lhs < chain.rhs && !chain.empty_box;
            chain.g_tilde = gt;
            chain.e = e;
        }
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn powers(dim: u32, k: Vec<u32>, gamma: &[f64]) -> SystemSpec {
        let f = gamma
            .iter()
            .map(|&g| Nonlinearity::power(g).unwrap())
            .collect();
        SystemSpec::new(dim, k, f).unwrap()
    }

    #[test]
    fn power_chain_recursion() {
        let spec = powers(3, vec![1, 2, 3], &[0.5, 2.0, 1.5]);
        let r0 = 2.0;
        let c = multiplicity_thresholds(&spec, ThresholdCase::Small { r0 }).unwrap();
        let g3 = (r0 / 4.0f64).powf(1.5);
        let g2 = g3.powf(2.0 / 3.0);
        let g1 = g2.powf(0.5 / 2.0);
        for (got, want) in c.g.iter().zip([g1, g2, g3]) {
            assert!((got - want).abs() < 1e-14 * want.max(1.0));
        }
        assert!(c.satisfied == (r0 > g1));
    }

    #[test]
    fn constant_chain() {
        let f = Nonlinearity::constant(0.7).unwrap();
        let spec = SystemSpec::new(2, vec![1, 2], vec![f.clone(), f]).unwrap();
        let c = multiplicity_thresholds(&spec, ThresholdCase::Small { r0: 1.0 }).unwrap();
        assert_eq!(c.g, vec![0.7, 0.7]);
    }

    #[test]
    fn e_chain_lower_corner() {
        let spec = powers(2, vec![1, 1], &[2.0, 3.0]);
        let big_r0 = 0.8;
        let c = multiplicity_thresholds(&spec, ThresholdCase::Large { big_r0 }).unwrap();
        assert!((c.e[1] - (big_r0 / 4.0f64).powi(3)).abs() < 1e-15);
        let lo = 0.25 * c.gamma[1] * c.e[1];
        assert!((c.e[0] - lo * lo).abs() < 1e-15);
        assert!((c.g_tilde[1].unwrap() - big_r0.powi(3)).abs() < 1e-15);
    }

    #[test]
    fn nonpositive_radius_is_rejected() {
        let spec = powers(2, vec![1, 1], &[1.0, 1.0]);
        assert!(multiplicity_thresholds(&spec, ThresholdCase::Small { r0: 0.0 }).is_err());
        assert!(multiplicity_thresholds(&spec, ThresholdCase::Large { big_r0: -1.0 }).is_err());
    }

    #[test]
    fn chains_grow_with_radius() {
        let f = Nonlinearity::from_triples(&[(0.3, 1.0, 0.5), (0.2, 0.0, 3.0)]).unwrap();
        let spec = SystemSpec::new(2, vec![1, 2], vec![f.clone(), f]).unwrap();
        let mut prev: Option<Vec<f64>> = None;
        for r0 in [0.1, 0.5, 1.0, 4.0, 20.0] {
            let c = multiplicity_thresholds(&spec, ThresholdCase::Small { r0 }).unwrap();
            if let Some(p) = &prev {
                assert!(c.g.iter().zip(p).all(|(a, b)| a >= b));
            }
            prev = Some(c.g);
        }
    }
}
