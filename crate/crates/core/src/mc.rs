//! Monte Carlo propagation of parameter uncertainty through the payoff
//! model.
//!
//! Each draw gets its own counter-based RNG stream keyed by
//! `(seed, draw index)`, and aggregation always runs in draw order, so a
//! result is a deterministic function of `(config, t, n, seed)` no
//! matter how many threads evaluate the draws.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Distribution};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::archetype::ScenarioConfig;
use crate::error::{ModelError, Result};
use crate::payoff::{classify_action, phase_one_payoff, phase_two_payoff};
use crate::scenario::{
    validate_non_negative, validate_time, validate_unit_interval, AttackerAction, ScenarioParams,
};

/// Which scenario parameter a distribution replaces.
///
/// Declaration order fixes the per-draw sampling order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ParamTarget {
    #[serde(rename = "alpha")]
    Alpha,
    #[serde(rename = "p2")]
    P2,
    #[serde(rename = "delta")]
    Delta,
    #[serde(rename = "V")]
    V,
    #[serde(rename = "C1")]
    C1,
    #[serde(rename = "C2")]
    C2,
}

impl ParamTarget {
    pub fn name(self) -> &'static str {
        match self {
            Self::Alpha => "alpha",
            Self::P2 => "p2",
            Self::Delta => "delta",
            Self::V => "V",
            Self::C1 => "C1",
            Self::C2 => "C2",
        }
    }

    /// Bounds check for a concrete value of this parameter.
    pub fn check_bounds(self, value: f64) -> Result<()> {
        match self {
            Self::Alpha | Self::P2 => validate_unit_interval(self.name(), value),
            Self::Delta | Self::V | Self::C1 | Self::C2 => {
                validate_non_negative(self.name(), value)
            }
        }
    }
}

/// Shape of the uncertainty on one parameter.
///
/// `Point` and `Uniform` values must respect the target's bounds;
/// `Beta` samples lie in [0, 1], which every target admits, so only its
/// shape parameters need checking.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DistKind {
    Point { v: f64 },
    Uniform { a: f64, b: f64 },
    Beta { a: f64, b: f64 },
}

// Hand-rolled so the schema stays strict: tagged enums cannot use
// deny_unknown_fields, and typos in risk inputs must not pass silently.
impl<'de> Deserialize<'de> for DistKind {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        use serde::de::Error;

        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct RawDist {
            kind: String,
            v: Option<f64>,
            a: Option<f64>,
            b: Option<f64>,
        }

        let raw = RawDist::deserialize(deserializer)?;
        let need = |field: Option<f64>, name: &str| {
            field.ok_or_else(|| {
                D::Error::custom(format!(
                    "distribution kind `{}` requires field `{name}`",
                    raw.kind
                ))
            })
        };
        let forbid = |field: Option<f64>, name: &str| {
            if field.is_some() {
                Err(D::Error::custom(format!(
                    "field `{name}` does not apply to distribution kind `{}`",
                    raw.kind
                )))
            } else {
                Ok(())
            }
        };
        match raw.kind.as_str() {
            "point" => {
                forbid(raw.a, "a")?;
                forbid(raw.b, "b")?;
                Ok(DistKind::Point {
                    v: need(raw.v, "v")?,
                })
            }
            "uniform" => {
                forbid(raw.v, "v")?;
                Ok(DistKind::Uniform {
                    a: need(raw.a, "a")?,
                    b: need(raw.b, "b")?,
                })
            }
            "beta" => {
                forbid(raw.v, "v")?;
                Ok(DistKind::Beta {
                    a: need(raw.a, "a")?,
                    b: need(raw.b, "b")?,
                })
            }
            other => Err(D::Error::custom(format!(
                "unknown distribution kind `{other}`"
            ))),
        }
    }
}

/// A distribution attached to one scenario parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamDistribution {
    pub target: ParamTarget,
    pub kind: DistKind,
}

impl ParamDistribution {
    pub fn new(target: ParamTarget, kind: DistKind) -> Result<Self> {
        let dist = Self { target, kind };
        dist.validate()?;
        Ok(dist)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |reason: String| ModelError::InvalidDistribution {
            target: self.target.name().to_owned(),
            reason,
        };
        match self.kind {
            DistKind::Point { v } => self.target.check_bounds(v).map_err(|e| fail(e.to_string())),
            DistKind::Uniform { a, b } => {
                self.target
                    .check_bounds(a)
                    .map_err(|e| fail(e.to_string()))?;
                self.target
                    .check_bounds(b)
                    .map_err(|e| fail(e.to_string()))?;
                if a > b {
                    Err(fail(format!("lower bound {a} exceeds upper bound {b}")))
                } else {
                    Ok(())
                }
            }
            DistKind::Beta { a, b } => {
                if a.is_finite() && b.is_finite() && a > 0.0 && b > 0.0 {
                    Ok(())
                } else {
                    Err(fail(format!(
                        "shape parameters ({a}, {b}) must be finite and > 0"
                    )))
                }
            }
        }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> f64 {
        match self.kind {
            DistKind::Point { v } => v,
            DistKind::Uniform { a, b } => {
                if a == b {
                    a
                } else {
                    rng.random_range(a..=b)
                }
            }
            DistKind::Beta { a, b } => Beta::new(a, b)
                .expect("shape parameters validated")
                .sample(rng),
        }
    }
}

/// Aggregated estimator outputs of one Monte Carlo run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MCResult {
    pub n: u64,
    pub seed: u64,
    pub mean_pi1: f64,
    pub mean_pi2: f64,
    /// Half-width of the normal-approximation 95% interval on
    /// `mean_pi2`, `1.96 * s / sqrt(n)`.
    pub ci95_pi2: f64,
    pub p_no_attack: f64,
    pub p_phase_one: f64,
    pub p_two_phase: f64,
}

fn sample_scenario(
    base: &ScenarioParams,
    distributions: &[ParamDistribution],
    rng: &mut ChaCha8Rng,
) -> ScenarioParams {
    let mut v = base.v();
    let mut alpha = base.alpha();
    let mut p2 = base.p2();
    let mut delta = base.delta();
    let mut c1 = base.c1();
    let mut c2 = base.c2();
    for dist in distributions {
        let value = dist.sample(rng);
        match dist.target {
            ParamTarget::Alpha => alpha = value,
            ParamTarget::P2 => p2 = value,
            ParamTarget::Delta => delta = value,
            ParamTarget::V => v = value,
            ParamTarget::C1 => c1 = value,
            ParamTarget::C2 => c2 = value,
        }
    }
    ScenarioParams::new(v, alpha, p2, delta, c1, c2)
        .expect("sampled values are bounds-constrained by distribution validation")
}

/// Draws `n` parameter vectors, evaluates the payoff model on each, and
/// aggregates means, action frequencies, and a CI on the two-stage mean.
///
/// Parameters without a distribution stay fixed at their resolved
/// values. Identical `(config, t, n, seed)` produce an identical
/// result.
pub fn run_mc(config: &ScenarioConfig, t: f64, n: u64, seed: u64) -> Result<MCResult> {
    validate_time(t)?;
    if n == 0 {
        return Err(ModelError::InvalidSampleCount);
    }
    let base = config.resolve()?;
    let distributions = config.distributions();
    for dist in distributions {
        dist.validate()?;
    }

    let draws: Vec<(f64, f64, AttackerAction)> = (0..n)
        .into_par_iter()
        .map(|index| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(index);
            let params = sample_scenario(&base, distributions, &mut rng);
            let pi1 = phase_one_payoff(&params);
            let pi2 = phase_two_payoff(&params, t).expect("t validated above");
            (pi1.value(), pi2.value(), classify_action(pi1, pi2))
        })
        .collect();

    let count = n as f64;
    let mut sum_pi1 = 0.0;
    let mut sum_pi2 = 0.0;
    let mut action_counts = [0u64; 3];
    for (pi1, pi2, action) in &draws {
        sum_pi1 += pi1;
        sum_pi2 += pi2;
        let slot = match action {
            AttackerAction::NoAttack => 0,
            AttackerAction::PhaseOneOnly => 1,
            AttackerAction::TwoPhase => 2,
        };
        action_counts[slot] += 1;
    }
    let mean_pi1 = sum_pi1 / count;
    let mean_pi2 = sum_pi2 / count;

    let mut sum_sq = 0.0;
    for (_, pi2, _) in &draws {
        let dev = pi2 - mean_pi2;
        sum_sq += dev * dev;
    }
    let std_dev = if n > 1 {
        (sum_sq / (count - 1.0)).sqrt()
    } else {
        0.0
    };

    Ok(MCResult {
        n,
        seed,
        mean_pi1,
        mean_pi2,
        ci95_pi2: 1.96 * std_dev / count.sqrt(),
        p_no_attack: action_counts[0] as f64 / count,
        p_phase_one: action_counts[1] as f64 / count,
        p_two_phase: action_counts[2] as f64 / count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::archetype::parse_scenario;

    fn reference_config(alpha: f64) -> ScenarioConfig {
        let params = ScenarioParams::new(1000.0, alpha, 0.8, 0.8, 100.0, 200.0).unwrap();
        ScenarioConfig::from_params(&params)
    }

    fn with_distributions(
        mut config: ScenarioConfig,
        dists: Vec<ParamDistribution>,
    ) -> ScenarioConfig {
        config.set_distributions(dists).unwrap();
        config
    }

    #[test]
    fn point_masses_reproduce_deterministic_eval() {
        let config = with_distributions(
            reference_config(0.5),
            vec![
                ParamDistribution::new(ParamTarget::Alpha, DistKind::Point { v: 0.5 }).unwrap(),
                ParamDistribution::new(ParamTarget::P2, DistKind::Point { v: 0.8 }).unwrap(),
                ParamDistribution::new(ParamTarget::Delta, DistKind::Point { v: 0.8 }).unwrap(),
                ParamDistribution::new(ParamTarget::V, DistKind::Point { v: 1000.0 }).unwrap(),
                ParamDistribution::new(ParamTarget::C1, DistKind::Point { v: 100.0 }).unwrap(),
                ParamDistribution::new(ParamTarget::C2, DistKind::Point { v: 200.0 }).unwrap(),
            ],
        );
        for n in [1, 7, 100] {
            let result = run_mc(&config, 0.0, n, 13).unwrap();
            assert_eq!(result.mean_pi1, 400.0);
            assert_eq!(result.mean_pi2, 600.0);
            assert_eq!(result.ci95_pi2, 0.0);
            assert_eq!(result.p_two_phase, 1.0);
            assert_eq!(result.p_phase_one, 0.0);
            assert_eq!(result.p_no_attack, 0.0);
        }
    }

    #[test]
    fn uniform_p2_matches_closed_form_expectation() {
        // pi2 is linear in p2, so E[pi2] = -300 + E[p2] * 1000 = 200.
        let config = with_distributions(
            reference_config(0.0),
            vec![
                ParamDistribution::new(ParamTarget::P2, DistKind::Uniform { a: 0.0, b: 1.0 })
                    .unwrap(),
            ],
        );
        let result = run_mc(&config, 0.0, 200_000, 42).unwrap();
        assert!(
            (result.mean_pi2 - 200.0).abs() < 5.0,
            "mean_pi2 = {}",
            result.mean_pi2
        );
        // mean_pi1 is unaffected by the p2 draw
        assert_eq!(result.mean_pi1, -100.0);
    }

    #[test]
    fn uniform_delta_matches_analytic_integral() {
        // E[exp(-delta)] over U(0.4, 1.2) = (exp(-0.4) - exp(-1.2)) / 0.8
        let config = with_distributions(
            reference_config(0.0),
            vec![
                ParamDistribution::new(ParamTarget::Delta, DistKind::Uniform { a: 0.4, b: 1.2 })
                    .unwrap(),
            ],
        );
        let result = run_mc(&config, 1.0, 200_000, 42).unwrap();
        let expected = -300.0 + 800.0 * (((-0.4f64).exp() - (-1.2f64).exp()) / 0.8);
        assert!(
            (result.mean_pi2 - expected).abs() < 5.0,
            "mean_pi2 = {}, expected {expected}",
            result.mean_pi2
        );
    }

    #[test]
    fn quadrature_cross_check_single_uniform() {
        let (a, b) = (0.4, 1.2);
        let config = with_distributions(
            reference_config(0.0),
            vec![ParamDistribution::new(ParamTarget::Delta, DistKind::Uniform { a, b }).unwrap()],
        );
        let n = 200_000;
        let result = run_mc(&config, 1.0, n, 7).unwrap();

        // 10,000-point midpoint rule over the uniform parameter.
        let points = 10_000;
        let width = (b - a) / points as f64;
        let base = reference_config(0.0).resolve().unwrap();
        let mut total = 0.0;
        for i in 0..points {
            let delta = a + (i as f64 + 0.5) * width;
            let params = ScenarioParams::new(
                base.v(),
                base.alpha(),
                base.p2(),
                delta,
                base.c1(),
                base.c2(),
            )
            .unwrap();
            total += phase_two_payoff(&params, 1.0).unwrap().value();
        }
        let quadrature = total / points as f64;

        let standard_error = result.ci95_pi2 / 1.96;
        assert!(
            (result.mean_pi2 - quadrature).abs() <= 3.0 * standard_error,
            "mc {} vs quadrature {quadrature}, se {standard_error}",
            result.mean_pi2
        );
    }

    #[test]
    fn same_seed_is_byte_identical_across_thread_counts() {
        let config = with_distributions(
            reference_config(0.3),
            vec![
                ParamDistribution::new(ParamTarget::P2, DistKind::Uniform { a: 0.2, b: 0.9 })
                    .unwrap(),
                ParamDistribution::new(ParamTarget::Delta, DistKind::Beta { a: 2.0, b: 5.0 })
                    .unwrap(),
            ],
        );
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| run_mc(&config, 1.0, 5_000, 99).unwrap());
        let quad = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap()
            .install(|| run_mc(&config, 1.0, 5_000, 99).unwrap());
        assert_eq!(
            serde_json::to_string(&single).unwrap(),
            serde_json::to_string(&quad).unwrap()
        );
    }

    #[test]
    fn different_seeds_differ() {
        let config = with_distributions(
            reference_config(0.3),
            vec![
                ParamDistribution::new(ParamTarget::P2, DistKind::Uniform { a: 0.0, b: 1.0 })
                    .unwrap(),
            ],
        );
        let a = run_mc(&config, 1.0, 1_000, 1).unwrap();
        let b = run_mc(&config, 1.0, 1_000, 2).unwrap();
        assert_ne!(a.mean_pi2, b.mean_pi2);
    }

    #[test]
    fn action_probabilities_form_a_simplex() {
        // Wide uncertainty so all three labels appear.
        let config = with_distributions(
            reference_config(0.1),
            vec![
                ParamDistribution::new(ParamTarget::Alpha, DistKind::Uniform { a: 0.0, b: 1.0 })
                    .unwrap(),
                ParamDistribution::new(ParamTarget::P2, DistKind::Uniform { a: 0.0, b: 1.0 })
                    .unwrap(),
                ParamDistribution::new(ParamTarget::C1, DistKind::Uniform { a: 0.0, b: 400.0 })
                    .unwrap(),
            ],
        );
        let result = run_mc(&config, 0.5, 20_000, 5).unwrap();
        for p in [result.p_no_attack, result.p_phase_one, result.p_two_phase] {
            assert!((0.0..=1.0).contains(&p));
        }
        let total = result.p_no_attack + result.p_phase_one + result.p_two_phase;
        assert!((total - 1.0).abs() <= 1e-12, "total {total}");
        assert!(result.p_no_attack > 0.0);
        assert!(result.p_phase_one > 0.0);
        assert!(result.p_two_phase > 0.0);
    }

    #[test]
    fn beta_distribution_samples_stay_in_unit_interval() {
        let config = with_distributions(
            reference_config(0.5),
            vec![
                ParamDistribution::new(ParamTarget::Alpha, DistKind::Beta { a: 0.5, b: 0.5 })
                    .unwrap(),
            ],
        );
        // Would panic inside sample_scenario if a draw escaped [0, 1].
        let result = run_mc(&config, 0.5, 10_000, 11).unwrap();
        assert_eq!(result.n, 10_000);
    }

    #[test]
    fn rejects_invalid_inputs() {
        let config = reference_config(0.5);
        assert!(matches!(
            run_mc(&config, 0.0, 0, 1),
            Err(ModelError::InvalidSampleCount)
        ));
        assert!(run_mc(&config, -1.0, 10, 1).is_err());

        assert!(
            ParamDistribution::new(ParamTarget::Alpha, DistKind::Uniform { a: 0.5, b: 1.5 })
                .is_err()
        );
        assert!(
            ParamDistribution::new(ParamTarget::P2, DistKind::Uniform { a: 0.9, b: 0.1 }).is_err()
        );
        assert!(ParamDistribution::new(ParamTarget::Delta, DistKind::Point { v: -1.0 }).is_err());
        assert!(
            ParamDistribution::new(ParamTarget::Alpha, DistKind::Beta { a: 0.0, b: 1.0 }).is_err()
        );
    }

    #[test]
    fn duplicate_targets_are_rejected() {
        let mut config = reference_config(0.5);
        let err = config
            .set_distributions(vec![
                ParamDistribution::new(ParamTarget::P2, DistKind::Point { v: 0.5 }).unwrap(),
                ParamDistribution::new(ParamTarget::P2, DistKind::Uniform { a: 0.0, b: 1.0 })
                    .unwrap(),
            ])
            .unwrap_err();
        assert!(err.to_string().contains("p2"), "got: {err}");
    }

    #[test]
    fn distribution_schema_round_trips() {
        let text = r#"{
            "V": 1000, "alpha": 0.0, "p2": 0.8, "delta": 0.8, "C1": 100, "C2": 200,
            "distributions": {
                "p2": {"kind": "uniform", "a": 0.0, "b": 1.0},
                "delta": {"kind": "beta", "a": 2.0, "b": 5.0},
                "V": {"kind": "point", "v": 1000.0}
            }
        }"#;
        let config = parse_scenario(text).unwrap();
        let dists = config.distributions();
        assert_eq!(dists.len(), 3);
        // sorted by target declaration order: p2, delta, V
        assert_eq!(dists[0].target, ParamTarget::P2);
        assert_eq!(dists[1].target, ParamTarget::Delta);
        assert_eq!(dists[2].target, ParamTarget::V);
        assert_eq!(dists[0].kind, DistKind::Uniform { a: 0.0, b: 1.0 });
        assert_eq!(dists[1].kind, DistKind::Beta { a: 2.0, b: 5.0 });
    }

    #[test]
    fn out_of_bounds_distribution_in_document_is_rejected() {
        let text = r#"{
            "V": 1000, "alpha": 0.0, "p2": 0.8, "delta": 0.8, "C1": 100, "C2": 200,
            "distributions": {"p2": {"kind": "uniform", "a": 0.0, "b": 1.5}}
        }"#;
        let err = parse_scenario(text).unwrap_err();
        assert!(err.to_string().contains("p2"), "got: {err}");
    }

    #[test]
    fn distribution_schema_is_strict() {
        let wrap = |dist: &str| {
            format!(
                r#"{{"V": 1000, "alpha": 0.0, "p2": 0.8, "delta": 0.8, "C1": 100, "C2": 200,
                     "distributions": {{"p2": {dist}}}}}"#
            )
        };
        // unknown field inside a distribution object
        let err = parse_scenario(&wrap(r#"{"kind": "uniform", "a": 0.0, "b": 1.0, "typo": 3}"#))
            .unwrap_err();
        assert!(err.to_string().contains("typo"), "got: {err}");

        // unknown kind
        let err = parse_scenario(&wrap(r#"{"kind": "gaussian", "a": 0.0, "b": 1.0}"#))
            .unwrap_err();
        assert!(err.to_string().contains("gaussian"), "got: {err}");

        // missing required field
        let err = parse_scenario(&wrap(r#"{"kind": "uniform", "a": 0.0}"#)).unwrap_err();
        assert!(err.to_string().contains('b'), "got: {err}");

        // field from the wrong kind
        let err = parse_scenario(&wrap(r#"{"kind": "point", "v": 0.5, "a": 0.0}"#)).unwrap_err();
        assert!(err.to_string().contains('a'), "got: {err}");

        // unknown target name
        let err = parse_scenario(
            r#"{"V": 1000, "alpha": 0.0, "p2": 0.8, "delta": 0.8, "C1": 100, "C2": 200,
                "distributions": {"p3": {"kind": "point", "v": 0.5}}}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("p3"), "got: {err}");
    }
}
