//! Independent oracles shared by the integration tests.

#![allow(dead_code)]

/// `J_0(x)` from its power series (accurate for moderate `x`).
pub fn bessel_j0(x: f64) -> f64 {
    let q = -x * x / 4.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    for m in 1..60 {
        term *= q / (m as f64 * m as f64);
        sum += term;
    }
    sum
}

/// First positive zero of `J_0` by bisection on `[2, 3]`.
pub fn j01() -> f64 {
    let (mut a, mut b) = (2.0, 3.0);
    for _ in 0..200 {
        let c = 0.5 * (a + b);
        if bessel_j0(a) * bessel_j0(c) <= 0.0 {
            b = c;
        } else {
            a = c;
        }
    }
    0.5 * (a + b)
}

/// Tanh-sinh quadrature of `f` over `[a, b]`; handles integrable endpoint
/// singularities.
pub fn tanh_sinh(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let half = 0.5 * (b - a);
    let h = 1.0 / 64.0;
    let mut sum = 0.0;
    let mut j = -(6 * 64) as i64;
    while j <= 6 * 64 {
        let x = j as f64 * h;
        let s = std::f64::consts::FRAC_PI_2 * x.sinh();
        let c = s.cosh();
        let node = s.tanh();
        let w = std::f64::consts::FRAC_PI_2 * x.cosh() / (c * c);
        // Distance to the nearer endpoint, computed without cancellation.
        let gap = half / (s.abs().exp() * c);
        let t = if node < 0.0 { a + gap } else { b - gap };
        if gap > 0.0 && t > a && t < b {
            sum += w * f(t);
        }
        j += 1;
    }
    sum * h * half
}

pub fn binom(a: u32, b: u32) -> f64 {
    (0..b).fold(1.0, |acc, i| acc * (a - i) as f64 / (i + 1) as f64)
}

/// The lower-bound constant from its defining integral, with the inner
/// integral in closed form.
pub fn gamma_oracle(k: u32, dim: u32) -> f64 {
    let (kf, nf) = (k as f64, dim as f64);
    let c = binom(dim - 1, k - 1);
    let floor = 0.25f64.powi(dim as i32);
    tanh_sinh(
        |tau| (kf / tau.powf(nf - kf) * (tau.powi(dim as i32) - floor) / (nf * c)).powf(1.0 / kf),
        0.25,
        0.75,
    )
}

/// `(k / (N C(N-1, k-1)))^{1/k} (1 - t^2) / 2`.
pub fn constant_forcing_solution(dim: u32, k: u32, t: f64) -> f64 {
    let a = (k as f64 / (dim as f64 * binom(dim - 1, k - 1))).powf(1.0 / k as f64);
    a * (1.0 - t * t) / 2.0
}
