//! Growth exponents at zero and infinity and the regime they select.
//!
//! For `f(t, v) = sum c_j t^{p_j} v^{gamma_j}` the four limit functionals are
//! decided exactly: at zero only the smallest exponent survives the ratio
//! `f / v^alpha`, at infinity only the largest. Each monomial is
//! nondecreasing in `t`, so the minimum over `t` is the value at `t = 0`
//! (only `p = 0` terms count) and the maximum is the value at `t = 1`.

use serde::Serialize;

use crate::nonlinearity::Nonlinearity;
use crate::system::SystemSpec;

const PRODUCT_TOL: f64 = 1e-12;

/// Regime selected by the functionals and the exponent products.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GrowthCondition {
    /// Lower functional at zero and upper at infinity positive, sublinear at both ends.
    C1,
    /// Upper at zero and lower at infinity positive, superlinear at both ends.
    C2,
    /// Both lower functionals positive, sublinear at zero and superlinear at infinity.
    C3,
    /// Both upper functionals positive, superlinear at zero and sublinear at infinity.
    C4,
    None,
}

#[derive(Debug, Clone, Serialize)]
pub struct GrowthClass {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub lower0: Vec<f64>,
    pub upper0: Vec<f64>,
    pub lower_inf: Vec<f64>,
    pub upper_inf: Vec<f64>,
    pub product_alpha: f64,
    pub product_beta: f64,
    pub product_k: f64,
    pub condition: GrowthCondition,
    /// Which functional conditions hold irrespective of the products.
    pub functional_c1: bool,
    pub functional_c2: bool,
    pub functional_c3: bool,
    pub functional_c4: bool,
    /// `f_i(t, 0) = 0` for `i = 2..n` (the stated form).
    pub vanishing_tail: bool,
    /// `f_i(t, 0) = 0` for at least `n - 1` indices (the relaxed form, informational).
    pub vanishing_any_n_minus_1: bool,
}

impl GrowthClass {
    /// Sublinear at zero (`prod alpha < prod k`).
    pub fn sublinear_at_zero(&self) -> bool {
        compare(self.product_alpha, self.product_k) == std::cmp::Ordering::Less
    }

    /// Sublinear at infinity (`prod beta < prod k`).
    pub fn sublinear_at_infinity(&self) -> bool {
        compare(self.product_beta, self.product_k) == std::cmp::Ordering::Less
    }
}

fn compare(a: f64, b: f64) -> std::cmp::Ordering {
    if (a - b).abs() <= PRODUCT_TOL * b.abs().max(1.0) {
        std::cmp::Ordering::Equal
    } else if a < b {
        std::cmp::Ordering::Less
    } else {
        std::cmp::Ordering::Greater
    }
}

fn functionals(f: &Nonlinearity) -> (f64, f64, f64, f64, f64, f64) {
    let alpha = f.min_exponent();
    let beta = f.max_exponent();
    let sum_at = |gamma: f64, only_t_free: bool| -> f64 {
        f.active_terms()
            .filter(|term| term.v_power == gamma && (!only_t_free || term.t_power == 0.0))
            .map(|term| term.coeff)
            .sum()
    };
    (
        alpha,
        beta,
        sum_at(alpha, true),
        sum_at(alpha, false),
        sum_at(beta, true),
        sum_at(beta, false),
    )
}

fn positive_finite(x: f64) -> bool {
    x > 0.0 && x.is_finite()
}

pub fn classify_growth(spec: &SystemSpec) -> GrowthClass {
    let n = spec.n();
    let mut class = GrowthClass {
        alpha: Vec::with_capacity(n),
        beta: Vec::with_capacity(n),
        lower0: Vec::with_capacity(n),
        upper0: Vec::with_capacity(n),
        lower_inf: Vec::with_capacity(n),
        upper_inf: Vec::with_capacity(n),
        product_alpha: 1.0,
        product_beta: 1.0,
        product_k: spec.k().iter().map(|&k| k as f64).product(),
        condition: GrowthCondition::None,
        functional_c1: false,
        functional_c2: false,
        functional_c3: false,
        functional_c4: false,
        vanishing_tail: spec.f()[1..].iter().all(Nonlinearity::vanishes_at_zero),
        vanishing_any_n_minus_1: spec.f().iter().filter(|f| f.vanishes_at_zero()).count() + 1 >= n,
    };
    for f in spec.f() {
        let (alpha, beta, lower0, upper0, lower_inf, upper_inf) = functionals(f);
        class.alpha.push(alpha);
        class.beta.push(beta);
        class.lower0.push(lower0);
        class.upper0.push(upper0);
        class.lower_inf.push(lower_inf);
        class.upper_inf.push(upper_inf);
    }
    class.product_alpha = class.alpha.iter().product();
    class.product_beta = class.beta.iter().product();

    // The functionals are only defined for positive exponents.
    let exponents_positive = class.alpha.iter().all(|&a| a > 0.0);
    let all = |xs: &[f64]| xs.iter().all(|&x| positive_finite(x));
    class.functional_c1 =
        exponents_positive && all(&class.lower0) && all(&class.upper_inf) && class.vanishing_tail;
    class.functional_c2 = exponents_positive && all(&class.upper0) && all(&class.lower_inf);
    class.functional_c3 =
        exponents_positive && all(&class.lower0) && all(&class.lower_inf) && class.vanishing_tail;
    class.functional_c4 = exponents_positive && all(&class.upper0) && all(&class.upper_inf);

    use std::cmp::Ordering::{Greater, Less};
    let at_zero = compare(class.product_alpha, class.product_k);
    let at_inf = compare(class.product_beta, class.product_k);
    class.condition = match (at_zero, at_inf) {
        (Less, Less) if class.functional_c1 => GrowthCondition::C1,
        (Greater, Greater) if class.functional_c2 => GrowthCondition::C2,
        (Less, Greater) if class.functional_c3 => GrowthCondition::C3,
        (Greater, Less) if class.functional_c4 => GrowthCondition::C4,
        _ => GrowthCondition::None,
    };
    class
}
