//! Attacker economics for staged intrusions.
//!
//! Models a two-stage attack against a layered target: a cheap,
//! commodity-driven perimeter compromise followed by an expensive,
//! target-specific deep stage whose gains decay with the time it takes.
//! The crate evaluates the stage payoffs exactly, derives break-even
//! times in closed form, labels optimal attacker actions over an
//! `(alpha, t)` lattice, bundles named attacker presets, and propagates
//! parameter uncertainty by seeded Monte Carlo.
//!
//! All operations are pure functions of their inputs; every
//! parallel-capable entry point (`run_sweep`, `run_mc`) is
//! deterministic regardless of thread count.

pub mod archetype;
pub mod error;
pub mod mc;
pub mod payoff;
pub mod scenario;
pub mod stages;
pub mod sweep;

pub use archetype::{
    builtin_archetypes, load_scenario, parse_scenario, Archetype, AttackClass, ParamOverrides,
    ScenarioConfig,
};
pub use error::{ModelError, Result};
pub use mc::{run_mc, DistKind, MCResult, ParamDistribution, ParamTarget};
pub use payoff::{
    break_even_vs_phase_one, break_even_vs_zero, limiting_payoff, optimal_action,
    payoff_time_gradient, phase_one_payoff, phase_two_increment, phase_two_payoff, BreakEven,
    PayoffLimit,
};
pub use scenario::{AttackerAction, Payoff, ScenarioParams};
pub use stages::{multi_stage_payoff, StageSpec};
pub use sweep::{action_frontier, run_sweep, FrontierPoint, RegionCell, SweepGrid, SweepSpec};
