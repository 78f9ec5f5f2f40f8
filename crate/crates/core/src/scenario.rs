//! Core domain types: validated scenario parameters, payoffs, and the
//! attacker's three-way action label.
//!
//! The model describes a two-stage intrusion. Stage one compromises the
//! perimeter, always succeeds, extracts a fraction `alpha` of the total
//! value `V`, and costs `c1` upfront. Stage two (reconnaissance plus
//! strike) succeeds with probability `p2`, extracts the remaining
//! `(1 - alpha) * V` discounted by `exp(-delta * t)` for the time `t` it
//! takes, and costs `c2` upfront.

use std::fmt;

use crate::error::{ModelError, Result};

pub(crate) fn validate_finite(name: &str, value: f64) -> Result<()> {
    if !value.is_finite() {
        return Err(ModelError::NonFinite {
            name: name.to_owned(),
            value,
        });
    }
    Ok(())
}

pub(crate) fn validate_unit_interval(name: &str, value: f64) -> Result<()> {
    validate_finite(name, value)?;
    if !(0.0..=1.0).contains(&value) {
        return Err(ModelError::ParamOutOfBounds {
            name: name.to_owned(),
            value,
            bounds: "0 <= value <= 1",
        });
    }
    Ok(())
}

pub(crate) fn validate_non_negative(name: &str, value: f64) -> Result<()> {
    validate_finite(name, value)?;
    if value < 0.0 {
        return Err(ModelError::ParamOutOfBounds {
            name: name.to_owned(),
            value,
            bounds: "value >= 0",
        });
    }
    Ok(())
}

pub(crate) fn validate_time(t: f64) -> Result<()> {
    if !t.is_finite() || t < 0.0 {
        return Err(ModelError::InvalidTime(t));
    }
    Ok(())
}

/// The full parameter set of a two-stage attack scenario.
///
/// Construction validates every bound, so a `ScenarioParams` value is
/// always internally consistent:
///
/// * `v >= 0` (total attainable value, money units)
/// * `0 <= alpha <= 1` (fraction of `v` extractable in stage one)
/// * `0 <= p2 <= 1` (stage-two success probability)
/// * `delta >= 0` (time-discount rate, per unit time)
/// * `c1 >= 0`, `c2 >= 0` (upfront stage costs, money units)
///
/// All fields must be finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioParams {
    v: f64,
    alpha: f64,
    p2: f64,
    delta: f64,
    c1: f64,
    c2: f64,
}

impl ScenarioParams {
    /// Builds a parameter set, rejecting out-of-bounds or non-finite values.
    pub fn new(v: f64, alpha: f64, p2: f64, delta: f64, c1: f64, c2: f64) -> Result<Self> {
        validate_non_negative("V", v)?;
        validate_unit_interval("alpha", alpha)?;
        validate_unit_interval("p2", p2)?;
        validate_non_negative("delta", delta)?;
        validate_non_negative("C1", c1)?;
        validate_non_negative("C2", c2)?;
        Ok(Self {
            v,
            alpha,
            p2,
            delta,
            c1,
            c2,
        })
    }

    /// Same scenario with a different stage-one fraction.
    pub fn with_alpha(&self, alpha: f64) -> Result<Self> {
        validate_unit_interval("alpha", alpha)?;
        Ok(Self { alpha, ..*self })
    }

    /// Total attainable value `V`.
    pub fn v(&self) -> f64 {
        self.v
    }

    /// Fraction of `V` extractable in stage one.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Stage-two success probability.
    pub fn p2(&self) -> f64 {
        self.p2
    }

    /// Time-discount rate.
    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Upfront cost of stage one.
    pub fn c1(&self) -> f64 {
        self.c1
    }

    /// Upfront cost of stage two.
    pub fn c2(&self) -> f64 {
        self.c2
    }
}

/// A signed profit in money units. Comparisons are plain numeric
/// comparisons on the underlying value.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Payoff(f64);

impl Payoff {
    pub(crate) fn new(value: f64) -> Self {
        Self(value)
    }

    /// The underlying money amount.
    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Display for Payoff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// What a rational attacker does at a given `(params, t)` point.
///
/// The labels satisfy:
/// * `NoAttack` implies `max(pi1, pi2) <= 0`
/// * `PhaseOneOnly` implies `pi1 > 0` and `pi1 >= pi2`
/// * `TwoPhase` implies `pi2 > 0` and `pi2 > pi1`
///
/// A zero payoff counts as "will not act", and an exact tie between
/// positive payoffs resolves to the lower-effort `PhaseOneOnly`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AttackerAction {
    NoAttack,
    PhaseOneOnly,
    TwoPhase,
}

impl fmt::Display for AttackerAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Self::NoAttack => "NoAttack",
            Self::PhaseOneOnly => "PhaseOneOnly",
            Self::TwoPhase => "TwoPhase",
        };
        f.write_str(name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_valid_params() {
        let p = ScenarioParams::new(1000.0, 0.5, 0.8, 0.8, 100.0, 200.0).unwrap();
        assert_eq!(p.v(), 1000.0);
        assert_eq!(p.alpha(), 0.5);
        assert_eq!(p.p2(), 0.8);
        assert_eq!(p.delta(), 0.8);
        assert_eq!(p.c1(), 100.0);
        assert_eq!(p.c2(), 200.0);
    }

    #[test]
    fn rejects_out_of_bounds_fields() {
        assert!(ScenarioParams::new(-1.0, 0.5, 0.8, 0.8, 100.0, 200.0).is_err());
        assert!(ScenarioParams::new(1000.0, 1.5, 0.8, 0.8, 100.0, 200.0).is_err());
        assert!(ScenarioParams::new(1000.0, -0.1, 0.8, 0.8, 100.0, 200.0).is_err());
        assert!(ScenarioParams::new(1000.0, 0.5, 1.1, 0.8, 100.0, 200.0).is_err());
        assert!(ScenarioParams::new(1000.0, 0.5, 0.8, -0.2, 100.0, 200.0).is_err());
        assert!(ScenarioParams::new(1000.0, 0.5, 0.8, 0.8, -5.0, 200.0).is_err());
        assert!(ScenarioParams::new(1000.0, 0.5, 0.8, 0.8, 100.0, -5.0).is_err());
    }

    #[test]
    fn rejects_non_finite_fields() {
        assert!(ScenarioParams::new(f64::NAN, 0.5, 0.8, 0.8, 100.0, 200.0).is_err());
        assert!(ScenarioParams::new(f64::INFINITY, 0.5, 0.8, 0.8, 100.0, 200.0).is_err());
        assert!(ScenarioParams::new(1000.0, 0.5, 0.8, f64::NAN, 100.0, 200.0).is_err());
    }

    #[test]
    fn bounds_error_names_the_field() {
        let err = ScenarioParams::new(1000.0, 1.5, 0.8, 0.8, 100.0, 200.0).unwrap_err();
        assert!(err.to_string().contains("alpha"), "got: {err}");
    }

    #[test]
    fn with_alpha_replaces_only_alpha() {
        let p = ScenarioParams::new(1000.0, 0.5, 0.8, 0.8, 100.0, 200.0).unwrap();
        let q = p.with_alpha(0.25).unwrap();
        assert_eq!(q.alpha(), 0.25);
        assert_eq!(q.v(), p.v());
        assert!(p.with_alpha(1.25).is_err());
    }

    #[test]
    fn payoff_ordering_is_numeric() {
        assert!(Payoff::new(1.0) > Payoff::new(-1.0));
        assert_eq!(Payoff::new(2.5), Payoff::new(2.5));
    }

    #[test]
    fn action_labels_display_as_csv_literals() {
        assert_eq!(AttackerAction::NoAttack.to_string(), "NoAttack");
        assert_eq!(AttackerAction::PhaseOneOnly.to_string(), "PhaseOneOnly");
        assert_eq!(AttackerAction::TwoPhase.to_string(), "TwoPhase");
    }
}
