//! Payoff formulas for the two-stage model, their time derivative, the
//! long-horizon limit, break-even times, and the optimal-action rule.
//!
//! With `pi1 = alpha * V - c1`, the two-stage profit evaluated at
//! completion time `t` is
//!
//! ```text
//! pi2(t) = pi1 + p2 * (1 - alpha) * V * exp(-delta * t) - c2
//! ```
//!
//! Stage costs are paid upfront and are never discounted. `pi2` is
//! computed as `pi1` plus the stage-two increment so that the identity
//! `pi2 == pi1 + increment` holds exactly in floating point.

use crate::error::Result;
use crate::scenario::{validate_time, AttackerAction, Payoff, ScenarioParams};

/// Outcome of taking `t` to infinity in `pi2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PayoffLimit {
    /// The discounted term decays away and `pi2` settles at `pi1 - c2`.
    Value(Payoff),
    /// `delta = 0` with a live discounted term: `pi2` is constant in `t`
    /// and never approaches `pi1 - c2`.
    NonConvergent,
}

/// Result of a break-even query.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BreakEven {
    /// The unique crossing time `t >= 0`.
    At(f64),
    /// No time at which the condition holds (including `t = 0`).
    Never,
    /// The condition holds for every `t >= 0`; there is no finite crossing.
    Always,
}

impl BreakEven {
    /// The crossing time, when one exists.
    pub fn finite(self) -> Option<f64> {
        match self {
            Self::At(t) => Some(t),
            _ => None,
        }
    }
}

/// Stage-two success probability times the value left for stage two,
/// `p2 * (1 - alpha) * V`. This is the undiscounted stage-two gain.
fn undiscounted_gain(params: &ScenarioParams) -> f64 {
    params.p2() * ((1.0 - params.alpha()) * params.v())
}

/// Profit of stopping after stage one: `alpha * V - c1`.
pub fn phase_one_payoff(params: &ScenarioParams) -> Payoff {
    Payoff::new(params.alpha() * params.v() - params.c1())
}

/// What stage two adds on top of stage one:
/// `p2 * (1 - alpha) * V * exp(-delta * t) - c2`.
///
/// Rejects negative or non-finite `t`.
pub fn phase_two_increment(params: &ScenarioParams, t: f64) -> Result<Payoff> {
    validate_time(t)?;
    let discounted = undiscounted_gain(params) * (-(params.delta() * t)).exp();
    Ok(Payoff::new(discounted - params.c2()))
}

/// Full two-stage profit at completion time `t`.
///
/// Exactly `phase_one_payoff + phase_two_increment`, so the
/// decomposition identity holds bit for bit.
pub fn phase_two_payoff(params: &ScenarioParams, t: f64) -> Result<Payoff> {
    let increment = phase_two_increment(params, t)?;
    Ok(Payoff::new(
        phase_one_payoff(params).value() + increment.value(),
    ))
}

/// Limit of `pi2(t)` as `t` grows without bound.
pub fn limiting_payoff(params: &ScenarioParams) -> PayoffLimit {
    if params.delta() == 0.0 && undiscounted_gain(params) > 0.0 {
        return PayoffLimit::NonConvergent;
    }
    PayoffLimit::Value(Payoff::new(phase_one_payoff(params).value() - params.c2()))
}

/// Analytic `d pi2 / dt = -delta * p2 * (1 - alpha) * V * exp(-delta * t)`,
/// in money per unit time.
pub fn payoff_time_gradient(params: &ScenarioParams, t: f64) -> Result<f64> {
    validate_time(t)?;
    Ok(-(params.delta() * undiscounted_gain(params) * (-(params.delta() * t)).exp()))
}

/// Time at which the two-stage profit stops beating the stage-one
/// profit, i.e. the root of the stage-two increment.
///
/// * Returns [`BreakEven::At`] `ln(p2 (1-alpha) V / c2) / delta` when a
///   unique crossing exists.
/// * [`BreakEven::Never`] when `p2 (1-alpha) V <= c2`: stage two never
///   pays for itself, not even at `t = 0`.
/// * [`BreakEven::Always`] when the increment stays positive for all
///   `t` (`c2 = 0` with positive gain, or `delta = 0`).
pub fn break_even_vs_phase_one(params: &ScenarioParams) -> BreakEven {
    let gain = undiscounted_gain(params);
    let c2 = params.c2();
    if gain <= c2 {
        BreakEven::Never
    } else if c2 == 0.0 || params.delta() == 0.0 {
        BreakEven::Always
    } else {
        BreakEven::At((gain / c2).ln() / params.delta())
    }
}

/// Time at which the two-stage profit crosses zero, the boundary of the
/// "will not act" region.
///
/// Writing `required = c1 + c2 - alpha * V` for the gain the discounted
/// term must still deliver:
///
/// * `required <= 0`: `pi2` never dips below zero, [`BreakEven::Always`].
/// * `0 < required < p2 (1-alpha) V`: unique root
///   `ln(p2 (1-alpha) V / required) / delta`.
/// * `required >= p2 (1-alpha) V`: `pi2 <= 0` already at `t = 0`,
///   [`BreakEven::Never`].
///
/// With `delta = 0` the profit is constant in `t` and its sign at
/// `t = 0` decides between `Always` and `Never`.
pub fn break_even_vs_zero(params: &ScenarioParams) -> BreakEven {
    let gain = undiscounted_gain(params);
    if params.delta() == 0.0 {
        let pi2 = phase_two_payoff(params, 0.0).expect("t = 0 is always valid");
        return if pi2.value() > 0.0 {
            BreakEven::Always
        } else {
            BreakEven::Never
        };
    }
    let required = params.c1() + params.c2() - params.alpha() * params.v();
    if required <= 0.0 {
        BreakEven::Always
    } else if required >= gain {
        BreakEven::Never
    } else {
        BreakEven::At((gain / required).ln() / params.delta())
    }
}

/// Classifies already-computed payoffs into an action label.
///
/// Zero profit counts as not acting; a positive tie goes to the
/// lower-effort single-stage attack.
pub(crate) fn classify_action(pi1: Payoff, pi2: Payoff) -> AttackerAction {
    if pi1.value() <= 0.0 && pi2.value() <= 0.0 {
        AttackerAction::NoAttack
    } else if pi2.value() > 0.0 && pi2.value() > pi1.value() {
        AttackerAction::TwoPhase
    } else {
        AttackerAction::PhaseOneOnly
    }
}

/// The attacker's best action at completion time `t`.
pub fn optimal_action(params: &ScenarioParams, t: f64) -> Result<AttackerAction> {
    let pi1 = phase_one_payoff(params);
    let pi2 = phase_two_payoff(params, t)?;
    Ok(classify_action(pi1, pi2))
}
