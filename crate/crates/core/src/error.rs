//! Error type shared across the crate.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, ModelError>;

/// Everything that can go wrong when building or evaluating a scenario.
#[derive(Debug, Error)]
pub enum ModelError {
    /// A scenario parameter violates its documented bounds.
    #[error("parameter `{name}` = {value} out of bounds (must satisfy {bounds})")]
    ParamOutOfBounds {
        name: String,
        value: f64,
        bounds: &'static str,
    },

    /// A scenario parameter is NaN or infinite.
    #[error("parameter `{name}` must be finite, got {value}")]
    NonFinite { name: String, value: f64 },

    /// An evaluation time is negative, NaN, or infinite.
    #[error("time t = {0} must be finite and >= 0")]
    InvalidTime(f64),

    /// A required parameter was supplied neither directly nor via an
    /// archetype.
    #[error("no value provided for parameter `{0}`")]
    MissingParam(&'static str),

    /// An archetype name that is not in the built-in registry.
    #[error("unknown archetype `{0}`")]
    UnknownArchetype(String),

    /// Sweep bounds or step counts are unusable.
    #[error("invalid sweep spec: {0}")]
    InvalidSweep(String),

    /// A stage list fails its structural checks.
    #[error("invalid stage list: {0}")]
    InvalidStages(String),

    /// A parameter distribution fails validation.
    #[error("invalid distribution for `{target}`: {reason}")]
    InvalidDistribution { target: String, reason: String },

    /// Monte Carlo runs need at least one sample.
    #[error("sample count must be >= 1")]
    InvalidSampleCount,

    /// Underlying file-system failure while loading a scenario.
    #[error(transparent)]
    Io(#[from] std::io::Error),

    /// Malformed scenario document, including unknown keys.
    #[error("failed to parse scenario file: {0}")]
    Parse(#[from] serde_json::Error),
}
