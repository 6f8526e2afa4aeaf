//! Seeded random members of the cone `K`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::cone_check;
use crate::error::{domain, Result};
use crate::grid::GridFunction;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A smooth start `A (1 - t^p)^q` with random amplitude and shape, vanishing at `t = 1`.
pub fn random_cone_start(m: usize, rng: &mut impl Rng) -> Result<GridFunction> {
    if m < 3 {
        return domain(format!("need at least 3 points, got {m}"));
    }
    loop {
        let amp = 10f64.powf(rng.gen_range(-1.0..1.0));
        let p = rng.gen_range(1.5..6.0);
        let q = rng.gen_range(0.3..1.0);
        let v = GridFunction::from_fn(m, |t| amp * (1.0 - t.powf(p)).max(0.0).powf(q))?;
        if cone_check(&v).in_cone {
            return Ok(v);
        }
    }
}

/// A rough member of `K`: independent samples in `[A/4, A]` on `[1/4, 3/4]`
/// and in `[0, A]` elsewhere.
pub fn random_cone_function(m: usize, rng: &mut impl Rng) -> Result<GridFunction> {
    if m < 3 {
        return domain(format!("need at least 3 points, got {m}"));
    }
    let amp = 10f64.powf(rng.gen_range(-1.0..1.0));
    let last = (m - 1) as f64;
    let mut values: Vec<f64> = (0..m)
        .map(|j| {
            let t = j as f64 / last;
            if (0.25..=0.75).contains(&t) {
                rng.gen_range(0.25 * amp..=amp)
            } else {
                rng.gen_range(0.0..=amp)
            }
        })
        .collect();
    // Pin the sup so the cone bound is attained somewhere.
    let mid = (m - 1) / 2;
    values[mid] = amp;
    GridFunction::new(values)
}
