//! Shared helpers for the integration suites: an independent bisection
//! root finder used to cross-check the closed-form break-even times,
//! seeded parameter generators, and tolerance helpers.
//!
//! Each test target compiles this module separately and uses a subset.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use attack_econ::ScenarioParams;

/// Deterministic RNG for a test, keyed so suites do not share streams.
pub fn test_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Bisection on `[0, t_hi]` with `t_hi` doubled until the sign changes,
/// then halving down to `tol`. Independent of the closed-form inversion
/// it is used to verify.
pub fn bisect_root(f: impl Fn(f64) -> f64, tol: f64) -> Option<f64> {
    let f_lo = f(0.0);
    if f_lo == 0.0 {
        return Some(0.0);
    }
    let mut hi = 1.0;
    let mut f_hi = f(hi);
    let mut doublings = 0;
    while f_hi.signum() == f_lo.signum() {
        hi *= 2.0;
        f_hi = f(hi);
        doublings += 1;
        if doublings > 200 {
            return None;
        }
    }
    let mut lo = if hi > 1.0 { hi / 2.0 } else { 0.0 };
    // the doubling step may have skipped past the crossing
    if f(lo).signum() != f_lo.signum() {
        lo = 0.0;
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Some(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// |got - want| measured against the largest magnitude involved, so the
/// check stays meaningful across payoff scales.
pub fn scaled_error(got: f64, want: f64, scale: f64) -> f64 {
    (got - want).abs() / scale.abs().max(want.abs()).max(1.0)
}

pub fn range(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo..=hi)
}

/// A generic valid scenario: V in [1, 1e6], costs up to 2V, any alpha,
/// p2, delta in [0, 3].
pub fn any_params(rng: &mut ChaCha8Rng) -> ScenarioParams {
    let v = range(rng, 1.0, 1e6);
    ScenarioParams::new(
        v,
        range(rng, 0.0, 1.0),
        range(rng, 0.0, 1.0),
        range(rng, 0.0, 3.0),
        range(rng, 0.0, 2.0 * v),
        range(rng, 0.0, 2.0 * v),
    )
    .expect("generated within bounds")
}

/// Scenario with a live, well-conditioned discounted term, for strict
/// monotonicity checks.
pub fn decaying_params(rng: &mut ChaCha8Rng) -> ScenarioParams {
    let v = range(rng, 1.0, 1e6);
    ScenarioParams::new(
        v,
        range(rng, 0.0, 0.95),
        range(rng, 0.1, 1.0),
        range(rng, 0.1, 2.0),
        range(rng, 0.0, 2.0 * v),
        range(rng, 0.0, 2.0 * v),
    )
    .expect("generated within bounds")
}
