//! Named attacker presets, scenario documents, and override resolution.
//!
//! An archetype bundles the qualitative story of an attacker class into
//! parameter overrides: patient, well-funded attackers discount slowly
//! and succeed deep in the network more often; low-resource attackers
//! discount steeply. The numeric preset values are illustrative
//! defaults, not calibrated measurements; only their ordering is
//! contractual (`delta` ascending from nation-state to hacktivist, `p2`
//! descending).

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{ModelError, Result};
use crate::mc::{DistKind, ParamDistribution, ParamTarget};
use crate::scenario::{validate_time, ScenarioParams};

/// Whether an attack stage is driven by off-the-shelf tooling or by
/// target-specific engineering. Descriptive metadata only; it never
/// changes a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AttackClass {
    /// Generated by a pre-existing attack mechanism bought or reused
    /// from the attacker's environment.
    Commodified,
    /// Engineered against one specific target or target set.
    Tailored,
}

impl fmt::Display for AttackClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Commodified => "commodified",
            Self::Tailored => "tailored",
        })
    }
}

/// A partial parameter set; any subset of the six scenario symbols.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ParamOverrides {
    pub v: Option<f64>,
    pub alpha: Option<f64>,
    pub p2: Option<f64>,
    pub delta: Option<f64>,
    pub c1: Option<f64>,
    pub c2: Option<f64>,
}

impl ParamOverrides {
    /// Field-wise precedence merge; `self` wins over `fallback`.
    fn or(self, fallback: Self) -> Self {
        Self {
            v: self.v.or(fallback.v),
            alpha: self.alpha.or(fallback.alpha),
            p2: self.p2.or(fallback.p2),
            delta: self.delta.or(fallback.delta),
            c1: self.c1.or(fallback.c1),
            c2: self.c2.or(fallback.c2),
        }
    }
}

/// A named attacker preset.
#[derive(Debug, Clone, PartialEq)]
pub struct Archetype {
    pub name: &'static str,
    pub description: &'static str,
    pub overrides: ParamOverrides,
    /// Stage one rides on commodified tooling.
    pub phase_one_class: AttackClass,
    /// Stage two is always engineered against the specific target.
    pub phase_two_class: AttackClass,
}

const fn preset(name: &'static str, description: &'static str, delta: f64, p2: f64) -> Archetype {
    Archetype {
        name,
        description,
        overrides: ParamOverrides {
            v: None,
            alpha: None,
            p2: Some(p2),
            delta: Some(delta),
            c1: None,
            c2: None,
        },
        phase_one_class: AttackClass::Commodified,
        phase_two_class: AttackClass::Tailored,
    }
}

/// Registry order is ascending `delta` (most patient attacker first).
static BUILTIN_ARCHETYPES: [Archetype; 3] = [
    preset(
        "nation-state",
        "Patient, well-resourced attacker able to fund long reconnaissance; deferred gains lose little value and deep-stage success is likely.",
        0.05,
        0.9,
    ),
    preset(
        "criminal",
        "Profit-driven group with moderate patience; weighs follow-on intrusion work against faster returns elsewhere.",
        0.8,
        0.6,
    ),
    preset(
        "hacktivist",
        "Low-resource, attention-driven attacker; steep time discounting makes prolonged second-stage work unattractive.",
        2.0,
        0.4,
    ),
];

/// The built-in attacker presets, ordered by ascending `delta`.
pub fn builtin_archetypes() -> &'static [Archetype] {
    &BUILTIN_ARCHETYPES
}

fn find_archetype(name: &str) -> Result<&'static Archetype> {
    BUILTIN_ARCHETYPES
        .iter()
        .find(|a| a.name == name)
        .ok_or_else(|| ModelError::UnknownArchetype(name.to_owned()))
}

/// On-disk scenario schema. Unknown keys are rejected so typos in risk
/// inputs surface instead of silently dropping a parameter.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    #[serde(rename = "V", skip_serializing_if = "Option::is_none")]
    v: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    p2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    delta: Option<f64>,
    #[serde(rename = "C1", skip_serializing_if = "Option::is_none")]
    c1: Option<f64>,
    #[serde(rename = "C2", skip_serializing_if = "Option::is_none")]
    c2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    archetype: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    distributions: Option<BTreeMap<ParamTarget, DistKind>>,
}

/// A scenario plus optional archetype, evaluation time, and parameter
/// distributions.
///
/// Resolution precedence, highest first: explicit per-field overrides,
/// archetype overrides, base values. Explicit overrides are what CLI
/// flags set; they are not part of the file schema.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ScenarioConfig {
    base: ParamOverrides,
    archetype: Option<String>,
    t: Option<f64>,
    distributions: Vec<ParamDistribution>,
    overrides: ParamOverrides,
}

impl ScenarioConfig {
    /// An empty config; parameters must come from overrides.
    pub fn new() -> Self {
        Self::default()
    }

    /// A config whose base is a fully resolved parameter set.
    pub fn from_params(params: &ScenarioParams) -> Self {
        Self {
            base: ParamOverrides {
                v: Some(params.v()),
                alpha: Some(params.alpha()),
                p2: Some(params.p2()),
                delta: Some(params.delta()),
                c1: Some(params.c1()),
                c2: Some(params.c2()),
            },
            ..Self::default()
        }
    }

    /// Explicit per-field overrides; these beat archetype values.
    pub fn overrides_mut(&mut self) -> &mut ParamOverrides {
        &mut self.overrides
    }

    /// Fills a base field only if nothing has set it yet.
    pub fn default_base(&mut self, target: ParamTarget, value: f64) {
        let slot = match target {
            ParamTarget::Alpha => &mut self.base.alpha,
            ParamTarget::P2 => &mut self.base.p2,
            ParamTarget::Delta => &mut self.base.delta,
            ParamTarget::V => &mut self.base.v,
            ParamTarget::C1 => &mut self.base.c1,
            ParamTarget::C2 => &mut self.base.c2,
        };
        slot.get_or_insert(value);
    }

    /// Selects (or clears) the archetype by name.
    pub fn set_archetype(&mut self, name: Option<String>) {
        self.archetype = name;
    }

    pub fn archetype(&self) -> Option<&str> {
        self.archetype.as_deref()
    }

    /// Evaluation time carried by the scenario file, if any.
    pub fn t(&self) -> Option<f64> {
        self.t
    }

    pub fn set_t(&mut self, t: Option<f64>) {
        self.t = t;
    }

    /// Parameter distributions, ordered by target.
    pub fn distributions(&self) -> &[ParamDistribution] {
        &self.distributions
    }

    pub fn set_distributions(&mut self, distributions: Vec<ParamDistribution>) -> Result<()> {
        for dist in &distributions {
            dist.validate()?;
        }
        let mut distributions = distributions;
        distributions.sort_by_key(|d| d.target);
        for pair in distributions.windows(2) {
            if pair[0].target == pair[1].target {
                return Err(ModelError::InvalidDistribution {
                    target: pair[0].target.name().to_owned(),
                    reason: "parameter has more than one distribution".to_owned(),
                });
            }
        }
        self.distributions = distributions;
        Ok(())
    }

    /// Merges overrides over archetype values over base values and
    /// validates the result.
    pub fn resolve(&self) -> Result<ScenarioParams> {
        let from_archetype = match &self.archetype {
            Some(name) => find_archetype(name)?.overrides,
            None => ParamOverrides::default(),
        };
        let merged = self.overrides.or(from_archetype).or(self.base);
        let require =
            |field: Option<f64>, name: &'static str| field.ok_or(ModelError::MissingParam(name));
        ScenarioParams::new(
            require(merged.v, "V")?,
            require(merged.alpha, "alpha")?,
            require(merged.p2, "p2")?,
            require(merged.delta, "delta")?,
            require(merged.c1, "C1")?,
            require(merged.c2, "C2")?,
        )
    }

    /// Canonical document for this config: the fully resolved six
    /// parameters plus `t` and distributions. Reloading it resolves to
    /// the identical parameter set.
    pub fn to_json(&self) -> Result<String> {
        let params = self.resolve()?;
        let raw = RawScenario {
            v: Some(params.v()),
            alpha: Some(params.alpha()),
            p2: Some(params.p2()),
            delta: Some(params.delta()),
            c1: Some(params.c1()),
            c2: Some(params.c2()),
            archetype: None,
            t: self.t,
            distributions: if self.distributions.is_empty() {
                None
            } else {
                Some(
                    self.distributions
                        .iter()
                        .map(|d| (d.target, d.kind))
                        .collect(),
                )
            },
        };
        Ok(serde_json::to_string_pretty(&raw)?)
    }
}

/// Parses a scenario document from a string.
///
/// Enforces the strict schema and per-field bounds up front so errors
/// name the offending field.
pub fn parse_scenario(text: &str) -> Result<ScenarioConfig> {
    let raw: RawScenario = serde_json::from_str(text)?;

    let base = ParamOverrides {
        v: raw.v,
        alpha: raw.alpha,
        p2: raw.p2,
        delta: raw.delta,
        c1: raw.c1,
        c2: raw.c2,
    };
    let checks = [
        (ParamTarget::V, base.v),
        (ParamTarget::Alpha, base.alpha),
        (ParamTarget::P2, base.p2),
        (ParamTarget::Delta, base.delta),
        (ParamTarget::C1, base.c1),
        (ParamTarget::C2, base.c2),
    ];
    for (target, value) in checks {
        if let Some(value) = value {
            target.check_bounds(value)?;
        }
    }
    if let Some(t) = raw.t {
        validate_time(t)?;
    }

    let mut config = ScenarioConfig {
        base,
        archetype: raw.archetype,
        t: raw.t,
        distributions: Vec::new(),
        overrides: ParamOverrides::default(),
    };
    if let Some(map) = raw.distributions {
        config.set_distributions(
            map.into_iter()
                .map(|(target, kind)| ParamDistribution { target, kind })
                .collect(),
        )?;
    }
    Ok(config)
}

/// Loads and validates a scenario file.
pub fn load_scenario(path: impl AsRef<Path>) -> Result<ScenarioConfig> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|err| {
        ModelError::Io(std::io::Error::new(
            err.kind(),
            format!("{}: {err}", path.display()),
        ))
    })?;
    parse_scenario(&text)
}
