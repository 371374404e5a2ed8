//! Seeded random variates and the simulation experiments.

mod experiment;
mod rng;
mod sample;

pub use experiment::{
    max_relative_slope_gap, run_climatology_experiment, run_linear_experiment, ExperimentKind,
    ExperimentMetadata, ExperimentReport, ModelRow, CSV_HEADER, LINEAR_ERROR, LINEAR_INTERCEPT,
    LINEAR_PREDICTOR,
};
pub use rng::RngState;
pub use sample::{sample, standard_gamma, standard_normal, DistributionSpec};
