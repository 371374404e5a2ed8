//! Lumped rainfall-runoff surrogate and calibration harness.
//!
//! The bucket model has three parameters (see [`BucketParams`]); any other
//! model implementing [`RunoffModel`] can be calibrated with the same
//! harness through [`calibrate_model`] and [`calibrate_all_model`].

mod calibrate;
mod model;
mod series;
mod synthetic;

pub use calibrate::{
    calibrate, calibrate_all, calibrate_all_model, calibrate_model, CalibrationPlan,
    CalibrationReport, CalibrationRow, DateSpan, PeriodMetrics,
};
pub use model::{simulate_flow, BucketModel, BucketParams, FlowSimulation, RunoffModel};
pub use series::{HydroSeries, CSV_COLUMNS};
pub use synthetic::{synthetic_forcing, synthetic_series};
