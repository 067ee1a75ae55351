//! Random walks of preset groups, tracked toward the Roller boundary.
//!
//! A run records the norm after every step and, for every wall the path
//! crosses, the last crossing step. Boundary points are represented by
//! sign vectors on a monitored wall set together with the stable part of
//! the final normal form.

mod distribution;
mod estimate;
mod moments;
mod sample;
mod strip;

pub use distribution::{Generation, StepDistribution};
pub use estimate::{
    boundary_estimate, default_window, distinct_limits, drift, hitting_measure, regular_certificate, stable_prefix,
    stabilization, wilson_interval, BoundaryEstimate, CertificateOptions, Distinctness, DriftEstimate,
    HittingEstimate, Stabilization,
};
pub use moments::{moment_report, MomentReport, StepEntropy};
pub use sample::{sample_paths, sample_paths_with_stream, WalkBatch, WalkConfig, WalkRun, WallRecord};
pub use strip::{strip_count, strip_growth_check, Strip, StripPoint, StripSeries};

use thiserror::Error;

use crate::group::GroupError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WalkError {
    #[error("invalid step distribution: {0}")]
    InvalidDistribution(String),
    #[error("window {window} exceeds the {steps} steps of the run")]
    WindowTooLarge { window: usize, steps: usize },
    #[error("no walls are monitored")]
    NoMonitoredWalls,
    #[error("the wall is not monitored")]
    UnmonitoredWall,
    #[error("no run stabilized on the wall")]
    NoStabilizedRuns,
    #[error("no strongly separated chain (longest found: {longest})")]
    NoChain { longest: usize },
    #[error("the two boundary estimates coincide")]
    IndistinctEndpoints,
    #[error(transparent)]
    Group(#[from] GroupError),
}
