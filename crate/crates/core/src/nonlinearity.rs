//! The nonlinearity family `f(t, v) = sum_j c_j t^{p_j} v^{gamma_j}`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// One monomial `coeff * t^t_power * v^v_power`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub coeff: f64,
    pub t_power: f64,
    pub v_power: f64,
}

impl Term {
    pub fn new(coeff: f64, t_power: f64, v_power: f64) -> Self {
        Self {
            coeff,
            t_power,
            v_power,
        }
    }

    fn eval(&self, t: f64, v: f64) -> f64 {
        // powf(0, 0) == 1, which keeps constant terms continuous at v = 0.
        self.coeff * t.powf(self.t_power) * v.powf(self.v_power)
    }
}

/// A nonnegative, nondecreasing (in `v`) nonlinearity built from monomials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Term>", into = "Vec<Term>")]
pub struct Nonlinearity {
    terms: Vec<Term>,
}

impl Nonlinearity {
    pub fn new(terms: Vec<Term>) -> Result<Self> {
        for (j, term) in terms.iter().enumerate() {
            let Term {
                coeff,
                t_power,
                v_power,
            } = *term;
            if !(coeff.is_finite() && t_power.is_finite() && v_power.is_finite()) {
                return domain(format!("term {j} has non-finite parameters"));
            }
            if coeff < 0.0 || t_power < 0.0 || v_power < 0.0 {
                return domain(format!(
                    "term {j} = ({coeff}, {t_power}, {v_power}) must have nonnegative entries"
                ));
            }
        }
        if !terms.iter().any(|term| term.coeff > 0.0) {
            return domain("nonlinearity is identically zero");
        }
        Ok(Self { terms })
    }

    /// `f(t, v) = v^gamma`.
    pub fn power(gamma: f64) -> Result<Self> {
        Self::new(vec![Term::new(1.0, 0.0, gamma)])
    }

    /// `f(t, v) = c`.
    pub fn constant(c: f64) -> Result<Self> {
        Self::new(vec![Term::new(c, 0.0, 0.0)])
    }

    /// Builds from `(c, p, gamma)` triples.
    pub fn from_triples(triples: &[(f64, f64, f64)]) -> Result<Self> {
        Self::new(
            triples
                .iter()
                .map(|&(c, p, g)| Term::new(c, p, g))
                .collect(),
        )
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Terms that actually contribute (`c > 0`).
    pub fn active_terms(&self) -> impl Iterator<Item = &Term> {
        self.terms.iter().filter(|term| term.coeff > 0.0)
    }

    /// `true` iff `f(t, 0) = 0` for every `t`.
    pub fn vanishes_at_zero(&self) -> bool {
        self.active_terms().all(|term| term.v_power > 0.0)
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(
            self.terms
                .iter()
                .map(|term| Term {
                    coeff: term.coeff * factor,
                    ..*term
                })
                .collect(),
        )
    }

    /// Smallest exponent in `v` among active terms.
    pub fn min_exponent(&self) -> f64 {
        self.active_terms()
            .map(|term| term.v_power)
            .fold(f64::INFINITY, f64::min)
    }

    /// Largest exponent in `v` among active terms.
    pub fn max_exponent(&self) -> f64 {
        self.active_terms()
            .map(|term| term.v_power)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Evaluates `f(t, v)` after checking `t` in `[0, 1]` and `v >= 0`.
    pub fn eval(&self, t: f64, v: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&t) {
            return domain(format!("t = {t} outside [0, 1]"));
        }
        if v.is_nan() || v < 0.0 {
            return domain(format!("negative argument v = {v}"));
        }
        Ok(self.eval_unchecked(t, v))
    }

    #[inline]
    pub(crate) fn eval_unchecked(&self, t: f64, v: f64) -> f64 {
        self.terms.iter().map(|term| term.eval(t, v)).sum()
    }
}

impl TryFrom<Vec<Term>> for Nonlinearity {
    type Error = crate::error::Error;

    fn try_from(terms: Vec<Term>) -> Result<Self> {
        Self::new(terms)
    }
}

impl From<Nonlinearity> for Vec<Term> {
    fn from(f: Nonlinearity) -> Self {
        f.terms
    }
}

/// Free-function form of [`Nonlinearity::eval`].
pub fn eval_nonlinearity(f: &Nonlinearity, t: f64, v: f64) -> Result<f64> {
    f.eval(t, v)
}
