use std::fmt::Debug;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::stats::RealVector;

/// A lumped rainfall-runoff model that can be calibrated in an unbounded
/// parameter space.
pub trait RunoffModel {
    type Params: Clone + Debug + PartialEq + Serialize;

    fn default_params(&self) -> Self::Params;

    /// Maps parameters to an unconstrained vector.
    fn to_unbounded(&self, params: &Self::Params) -> Vec<f64>;

    /// Inverse of [`RunoffModel::to_unbounded`]; defined for every real vector.
    fn params_from_unbounded(&self, u: &[f64]) -> Self::Params;

    /// Simulated daily flow for the given forcing.
    fn simulate(&self, params: &Self::Params, precip: &[f64], pet: &[f64]) -> Vec<f64>;
}

/// Three-parameter bucket: direct runoff bypass, saturation spill and a
/// linear-reservoir baseflow.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BucketParams {
    /// Store size (mm).
    pub capacity: f64,
    /// Fraction of the store released as baseflow each day, in (0, 1).
    pub recession: f64,
    /// Fraction of rainfall bypassing the store, in [0, 1].
    pub split: f64,
}

impl BucketParams {
    pub fn new(capacity: f64, recession: f64, split: f64) -> Result<Self> {
        if !(capacity > 0.0 && capacity.is_finite()) {
            return Err(Error::invalid(format!(
                "capacity must be positive, got {capacity}"
            )));
        }
        if !(recession > 0.0 && recession < 1.0) {
            return Err(Error::invalid(format!(
                "recession must lie in (0, 1), got {recession}"
            )));
        }
        if !(0.0..=1.0).contains(&split) {
            return Err(Error::invalid(format!(
                "split must lie in [0, 1], got {split}"
            )));
        }
        Ok(BucketParams {
            capacity,
            recession,
            split,
        })
    }
}

/// Daily fluxes of one bucket run.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowSimulation {
    pub flow: RealVector,
    pub actual_evap: Vec<f64>,
    pub final_store: f64,
}

/// Runs the bucket over the forcing, starting from `initial_store` (mm).
///
/// Each day: `direct = split·P`; the rest enters the store; evaporation is
/// `pet·min(1, store/capacity)` bounded by the store; the excess above
/// capacity spills; a `recession` fraction of what remains drains as baseflow.
pub fn simulate_flow(
    params: &BucketParams,
    precip: &[f64],
    pet: &[f64],
    initial_store: f64,
) -> Result<FlowSimulation> {
    let p = BucketParams::new(params.capacity, params.recession, params.split)?;
    if precip.len() != pet.len() {
        return Err(Error::Dimension {
            left: precip.len(),
            right: pet.len(),
        });
    }
    if !(initial_store >= 0.0 && initial_store.is_finite()) {
        return Err(Error::invalid(
            "initial store must be finite and non-negative",
        ));
    }
    let mut flow = Vec::with_capacity(precip.len());
    let mut actual_evap = Vec::with_capacity(precip.len());
    let mut store = initial_store;
    for (rain, demand) in precip.iter().zip(pet) {
        let (q, e) = step(&p, &mut store, *rain, *demand);
        flow.push(q);
        actual_evap.push(e);
    }
    Ok(FlowSimulation {
        flow: RealVector::new(flow)?,
        actual_evap,
        final_store: store,
    })
}

fn step(p: &BucketParams, store: &mut f64, rain: f64, demand: f64) -> (f64, f64) {
    let direct = p.split * rain;
    *store += (1.0 - p.split) * rain;
    let evap = (demand * (*store / p.capacity).min(1.0)).min(*store);
    *store = (*store - evap).max(0.0);
    let spill = (*store - p.capacity).max(0.0);
    *store -= spill;
    let baseflow = p.recession * *store;
    *store -= baseflow;
    (direct + spill + baseflow, evap)
}

/// The bucket as a [`RunoffModel`]: capacity is log-transformed, recession and
/// split are logit-transformed; runs start half full.
#[derive(Debug, Clone, Copy, Default)]
pub struct BucketModel;

fn logistic(u: f64) -> f64 {
    1.0 / (1.0 + (-u).exp())
}

fn logit(p: f64) -> f64 {
    (p / (1.0 - p)).ln()
}

impl RunoffModel for BucketModel {
    type Params = BucketParams;

    fn default_params(&self) -> BucketParams {
        BucketParams {
            capacity: 100.0,
            recession: 0.1,
            split: 0.2,
        }
    }

    fn to_unbounded(&self, p: &BucketParams) -> Vec<f64> {
        // Keep split = 0 or 1 representable by a finite (saturating) value.
        let split = p.split.clamp(1e-12, 1.0 - 1e-12);
        vec![p.capacity.ln(), logit(p.recession), logit(split)]
    }

    fn params_from_unbounded(&self, u: &[f64]) -> BucketParams {
        BucketParams {
            capacity: u[0].exp().clamp(f64::MIN_POSITIVE, f64::MAX),
            recession: logistic(u[1]).clamp(f64::EPSILON, 1.0 - f64::EPSILON),
            split: logistic(u[2]),
        }
    }

    fn simulate(&self, params: &BucketParams, precip: &[f64], pet: &[f64]) -> Vec<f64> {
        let mut store = 0.5 * params.capacity;
        precip
            .iter()
            .zip(pet)
            .map(|(rain, demand)| step(params, &mut store, *rain, *demand).0)
            .collect()
    }
}
