//! Evaluation of the payoff model over an `(alpha, t)` lattice, with
//! per-cell action labels and the frontier of the two-phase region.
//!
//! Cells may be evaluated in parallel; output is always assembled in
//! row-major order (alpha outer ascending, t inner ascending), so two
//! runs of the same spec are bit-identical regardless of scheduling.

use rayon::prelude::*;

use crate::error::{ModelError, Result};
use crate::payoff::{optimal_action, phase_one_payoff, phase_two_payoff};
use crate::scenario::{AttackerAction, Payoff, ScenarioParams};

/// A rectangular `(alpha, t)` lattice over a base scenario.
///
/// The base scenario's own `alpha` is ignored; each cell re-derives the
/// scenario at its lattice `alpha`. Step counts include both endpoints
/// and must be at least 2.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    base: ScenarioParams,
    alpha_min: f64,
    alpha_max: f64,
    alpha_steps: usize,
    t_min: f64,
    t_max: f64,
    t_steps: usize,
}

impl SweepSpec {
    pub fn new(
        base: ScenarioParams,
        alpha_min: f64,
        alpha_max: f64,
        alpha_steps: usize,
        t_min: f64,
        t_max: f64,
        t_steps: usize,
    ) -> Result<Self> {
        if !(alpha_min.is_finite() && alpha_max.is_finite()) {
            return Err(ModelError::InvalidSweep(
                "alpha range must be finite".into(),
            ));
        }
        if !(0.0..=1.0).contains(&alpha_min) || !(0.0..=1.0).contains(&alpha_max) {
            return Err(ModelError::InvalidSweep(format!(
                "alpha range [{alpha_min}, {alpha_max}] must lie within [0, 1]"
            )));
        }
        if alpha_min > alpha_max {
            return Err(ModelError::InvalidSweep(format!(
                "alpha_min {alpha_min} exceeds alpha_max {alpha_max}"
            )));
        }
        if !(t_min.is_finite() && t_max.is_finite()) || t_min < 0.0 {
            return Err(ModelError::InvalidSweep(
                "t range must be finite and nonnegative".into(),
            ));
        }
        if t_min > t_max {
            return Err(ModelError::InvalidSweep(format!(
                "t_min {t_min} exceeds t_max {t_max}"
            )));
        }
        if alpha_steps < 2 || t_steps < 2 {
            return Err(ModelError::InvalidSweep(
                "step counts must be at least 2".into(),
            ));
        }
        Ok(Self {
            base,
            alpha_min,
            alpha_max,
            alpha_steps,
            t_min,
            t_max,
            t_steps,
        })
    }

    pub fn base(&self) -> &ScenarioParams {
        &self.base
    }

    pub fn alpha_steps(&self) -> usize {
        self.alpha_steps
    }

    pub fn t_steps(&self) -> usize {
        self.t_steps
    }

    /// Lattice alpha at row `i`: `alpha_min + i * spacing`, clamped into
    /// [0, 1] to absorb last-place rounding at the upper endpoint.
    pub fn alpha_at(&self, i: usize) -> f64 {
        let spacing = (self.alpha_max - self.alpha_min) / (self.alpha_steps - 1) as f64;
        (self.alpha_min + i as f64 * spacing).clamp(0.0, 1.0)
    }

    /// Lattice t at column `j`.
    pub fn t_at(&self, j: usize) -> f64 {
        let spacing = (self.t_max - self.t_min) / (self.t_steps - 1) as f64;
        (self.t_min + j as f64 * spacing).max(0.0)
    }
}

/// One lattice point with its payoffs and action label.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionCell {
    pub alpha: f64,
    pub t: f64,
    pub pi1: Payoff,
    pub pi2: Payoff,
    pub action: AttackerAction,
}

/// The evaluated lattice, cells in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    spec: SweepSpec,
    cells: Vec<RegionCell>,
}

impl SweepGrid {
    pub fn spec(&self) -> &SweepSpec {
        &self.spec
    }

    /// All cells, alpha outer ascending, t inner ascending.
    pub fn cells(&self) -> &[RegionCell] {
        &self.cells
    }

    /// Iterates over constant-alpha rows.
    pub fn rows(&self) -> impl Iterator<Item = &[RegionCell]> {
        self.cells.chunks(self.spec.t_steps)
    }
}

/// Largest lattice `t` at which the two-phase attack is still the
/// optimal action for a given alpha row, if any.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrontierPoint {
    pub alpha: f64,
    pub t_last_two_phase: Option<f64>,
}

/// Evaluates every lattice cell.
///
/// Each cell is the direct evaluation of the payoff operations at its
/// `(alpha, t)`; nothing is interpolated.
pub fn run_sweep(spec: &SweepSpec) -> SweepGrid {
    let t_steps = spec.t_steps;
    let cells: Vec<RegionCell> = (0..spec.alpha_steps * t_steps)
        .into_par_iter()
        .map(|index| {
            let alpha = spec.alpha_at(index / t_steps);
            let t = spec.t_at(index % t_steps);
            let params = spec
                .base
                .with_alpha(alpha)
                .expect("lattice alpha is clamped into [0, 1]");
            let pi1 = phase_one_payoff(&params);
            let pi2 = phase_two_payoff(&params, t).expect("lattice t is nonnegative");
            let action = optimal_action(&params, t).expect("lattice t is nonnegative");
            RegionCell {
                alpha,
                t,
                pi1,
                pi2,
                action,
            }
        })
        .collect();
    SweepGrid {
        spec: spec.clone(),
        cells,
    }
}

/// Per-row frontier of the two-phase region.
///
/// Because the two-phase payoff only falls as `t` grows, the two-phase
/// cells of a row form a prefix; the frontier is the last cell of that
/// prefix.
pub fn action_frontier(grid: &SweepGrid) -> Vec<FrontierPoint> {
    grid.rows()
        .map(|row| {
            let alpha = row[0].alpha;
            let t_last = row
                .iter()
                .rev()
                .find(|cell| cell.action == AttackerAction::TwoPhase)
                .map(|cell| cell.t);
            FrontierPoint {
                alpha,
                t_last_two_phase: t_last,
            }
        })
        .collect()
}
