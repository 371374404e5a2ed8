use chrono::NaiveDate;

use super::model::{BucketModel, BucketParams, RunoffModel};
use super::series::HydroSeries;
use crate::error::{Error, Result};
use crate::simulate::{standard_gamma, standard_normal, RngState};

/// Daily precipitation and PET: rain falls on about a third of the days with
/// gamma-distributed depth (mean 8 mm); PET follows a seasonal cycle between
/// 0.5 and 4.5 mm peaking in early summer.
pub fn synthetic_forcing(
    start: NaiveDate,
    days: usize,
    rng: &mut RngState,
) -> (Vec<NaiveDate>, Vec<f64>, Vec<f64>) {
    let mut dates = Vec::with_capacity(days);
    let mut precip = Vec::with_capacity(days);
    let mut pet = Vec::with_capacity(days);
    let mut date = start;
    for _ in 0..days {
        let wet = rng.next_open01() < 0.35;
        precip.push(if wet {
            10.0 * standard_gamma(0.8, rng)
        } else {
            0.0
        });
        let doy = chrono::Datelike::ordinal(&date) as f64;
        pet.push(2.5 + 2.0 * (std::f64::consts::TAU * (doy - 80.0) / 365.25).sin());
        dates.push(date);
        date = date.succ_opt().expect("date in range");
    }
    (dates, precip, pet)
}

/// Synthetic catchment whose observed flow is the bucket simulation under
/// `truth`, perturbed by mean-one lognormal noise of log-scale `noise_sd`
/// (zero for a noiseless record).
pub fn synthetic_series(
    start: NaiveDate,
    days: usize,
    truth: &BucketParams,
    noise_sd: f64,
    rng: &mut RngState,
) -> Result<HydroSeries> {
    if !(noise_sd >= 0.0 && noise_sd.is_finite()) {
        return Err(Error::invalid("noise_sd must be finite and non-negative"));
    }
    let truth = BucketParams::new(truth.capacity, truth.recession, truth.split)?;
    let (dates, precip, pet) = synthetic_forcing(start, days, rng);
    let mut flow = BucketModel.simulate(&truth, &precip, &pet);
    if noise_sd > 0.0 {
        for q in &mut flow {
            *q *= (noise_sd * standard_normal(rng) - 0.5 * noise_sd * noise_sd).exp();
        }
    }
    HydroSeries::new(dates, precip, pet, flow)
}
