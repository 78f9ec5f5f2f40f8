//! Shared fixtures for the benchmark targets.

use attack_econ::{
    DistKind, ParamDistribution, ParamTarget, ScenarioConfig, ScenarioParams, SweepSpec,
};

/// The reference economics used throughout the benches.
pub fn reference_params() -> ScenarioParams {
    ScenarioParams::new(1000.0, 0.0, 0.8, 0.8, 100.0, 200.0).expect("valid reference params")
}

/// A dense lattice, large enough for the parallel path to matter.
pub fn dense_sweep_spec() -> SweepSpec {
    SweepSpec::new(reference_params(), 0.0, 1.0, 101, 0.0, 5.0, 101).expect("valid spec")
}

/// Uncertainty on p2 and delta over the reference scenario.
pub fn uncertain_config() -> ScenarioConfig {
    let mut config = ScenarioConfig::from_params(&reference_params());
    config
        .set_distributions(vec![
            ParamDistribution::new(ParamTarget::P2, DistKind::Uniform { a: 0.2, b: 1.0 })
                .expect("valid distribution"),
            ParamDistribution::new(ParamTarget::Delta, DistKind::Beta { a: 2.0, b: 5.0 })
                .expect("valid distribution"),
        ])
        .expect("valid distributions");
    config
}
