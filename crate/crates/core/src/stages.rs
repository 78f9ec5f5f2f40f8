//! N-stage generalization of the two-stage payoff.
//!
//! Each stage extracts its share of `V` only if every stage up to and
//! including it succeeds, discounted by the total time elapsed so far.
//! Stage costs are paid upfront and unconditionally, mirroring the
//! two-stage model.

use crate::error::{ModelError, Result};
use crate::scenario::{validate_non_negative, validate_unit_interval, Payoff};

/// One stage of a multi-stage attack.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StageSpec {
    alpha: f64,
    p: f64,
    cost: f64,
    duration: f64,
}

impl StageSpec {
    /// Builds a stage, validating per-stage bounds: `0 <= alpha <= 1`,
    /// `0 <= p <= 1`, `cost >= 0`, `duration >= 0`, all finite.
    pub fn new(alpha: f64, p: f64, cost: f64, duration: f64) -> Result<Self> {
        validate_unit_interval("stage.alpha", alpha)?;
        validate_unit_interval("stage.p", p)?;
        validate_non_negative("stage.cost", cost)?;
        validate_non_negative("stage.duration", duration)?;
        Ok(Self {
            alpha,
            p,
            cost,
            duration,
        })
    }

    /// Fraction of `V` this stage extracts.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Success probability conditional on reaching this stage.
    pub fn p(&self) -> f64 {
        self.p
    }

    /// Upfront cost of this stage.
    pub fn cost(&self) -> f64 {
        self.cost
    }

    /// Time this stage takes to complete.
    pub fn duration(&self) -> f64 {
        self.duration
    }
}

/// Expected profit of running every stage in order:
///
/// ```text
/// sum_k [ (prod_{j<=k} p_j) * alpha_k * V * exp(-delta * sum_{j<=k} t_j) - c_k ]
/// ```
///
/// Requires a nonempty stage list with `sum alpha_k <= 1`. With stages
/// `[(alpha, 1, c1, 0), (1 - alpha, p2, c2, t)]` this reduces exactly to
/// the two-stage payoff.
pub fn multi_stage_payoff(v: f64, delta: f64, stages: &[StageSpec]) -> Result<Payoff> {
    validate_non_negative("V", v)?;
    validate_non_negative("delta", delta)?;
    if stages.is_empty() {
        return Err(ModelError::InvalidStages("stage list is empty".into()));
    }
    let alpha_total: f64 = stages.iter().map(|s| s.alpha).sum();
    if alpha_total > 1.0 {
        return Err(ModelError::InvalidStages(format!(
            "stage fractions sum to {alpha_total}, must be <= 1"
        )));
    }

    let mut total = 0.0;
    let mut reach_probability = 1.0;
    let mut elapsed = 0.0;
    for stage in stages {
        reach_probability *= stage.p;
        elapsed += stage.duration;
        let discounted = reach_probability * (stage.alpha * v) * (-(delta * elapsed)).exp();
        total += discounted - stage.cost;
    }
    Ok(Payoff::new(total))
}
