use std::fmt;
use std::str::FromStr;

use chrono::NaiveDate;
use serde::Serialize;

use super::model::{BucketModel, RunoffModel};
use super::series::HydroSeries;
use crate::error::{Error, Result};
use crate::estimators::{minimize, MinimizerConfig};
use crate::losses::{l_nr2, l_w, mse, v_mean_avg, SeriesPair, TrainingLoss};
use crate::stats::RealVector;

/// Inclusive range of days.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DateSpan {
    pub start: NaiveDate,
    pub end: NaiveDate,
}

impl DateSpan {
    pub fn new(start: NaiveDate, end: NaiveDate) -> Result<Self> {
        if end < start {
            return Err(Error::invalid(format!(
                "span ends ({end}) before it starts ({start})"
            )));
        }
        Ok(DateSpan { start, end })
    }
}

impl FromStr for DateSpan {
    type Err = Error;

    /// Parses `YYYY-MM-DD:YYYY-MM-DD`.
    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s.split_once(':').ok_or_else(|| {
            Error::invalid(format!("span '{s}' must look like YYYY-MM-DD:YYYY-MM-DD"))
        })?;
        let parse = |d: &str| {
            NaiveDate::parse_from_str(d.trim(), "%Y-%m-%d")
                .map_err(|e| Error::invalid(format!("bad date '{d}' in span: {e}")))
        };
        DateSpan::new(parse(a)?, parse(b)?)
    }
}

impl fmt::Display for DateSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.start, self.end)
    }
}

/// Warm-up, calibration and validation periods. Simulation always starts at
/// the head of the series; the first `warmup_days` are never scored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CalibrationPlan {
    pub warmup_days: usize,
    pub calibration: DateSpan,
    pub validation: DateSpan,
}

#[derive(Debug, Clone, Copy)]
struct Windows {
    cal: (usize, usize),
    val: (usize, usize),
}

impl CalibrationPlan {
    fn windows(&self, series: &HydroSeries) -> Result<Windows> {
        let locate = |d: NaiveDate, what: &str| {
            series.index_of(d).ok_or_else(|| {
                Error::invalid(format!(
                    "{what} date {d} is outside the series ({} to {})",
                    series.start(),
                    series.end()
                ))
            })
        };
        let cal = (
            locate(self.calibration.start, "calibration")?,
            locate(self.calibration.end, "calibration")? + 1,
        );
        let val = (
            locate(self.validation.start, "validation")?,
            locate(self.validation.end, "validation")? + 1,
        );
        if cal.0 < self.warmup_days {
            return Err(Error::invalid(format!(
                "calibration starts on day {} but the warm-up covers the first {} days",
                cal.0, self.warmup_days
            )));
        }
        if val.0 < cal.1 {
            return Err(Error::invalid(format!(
                "validation span {} must start after calibration span {} ends",
                self.validation, self.calibration
            )));
        }
        Ok(Windows { cal, val })
    }

    /// Checks the plan against a series without running anything.
    pub fn validate(&self, series: &HydroSeries) -> Result<()> {
        self.windows(series).map(|_| ())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PeriodMetrics {
    pub mse: f64,
    pub lnr2: f64,
    pub lw: f64,
}

impl PeriodMetrics {
    fn of(pair: &SeriesPair) -> Result<Self> {
        Ok(PeriodMetrics {
            mse: mse(pair),
            lnr2: l_nr2(pair)?,
            lw: l_w(pair)?,
        })
    }

    pub fn get(&self, loss: TrainingLoss) -> f64 {
        match loss {
            TrainingLoss::Se => self.mse,
            TrainingLoss::Lnr2 => self.lnr2,
            TrainingLoss::Lw => self.lw,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CalibrationRow<P> {
    pub loss: TrainingLoss,
    pub params: P,
    pub calibration: PeriodMetrics,
    pub validation: PeriodMetrics,
    pub validation_vbar_mean: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CalibrationReport<P> {
    pub plan: CalibrationPlan,
    pub rows: Vec<CalibrationRow<P>>,
}

impl<P> CalibrationReport<P> {
    pub fn row(&self, loss: TrainingLoss) -> Option<&CalibrationRow<P>> {
        self.rows.iter().find(|r| r.loss == loss)
    }

    /// Every row is no worse than any other row on its own loss over the
    /// calibration period.
    pub fn is_diagonal_dominant(&self) -> bool {
        self.rows.iter().all(|own| {
            let v = own.calibration.get(own.loss);
            self.rows
                .iter()
                .all(|other| v <= other.calibration.get(own.loss))
        })
    }
}

struct Problem<'a, M: RunoffModel> {
    model: &'a M,
    series: &'a HydroSeries,
    windows: Windows,
    observed_cal: RealVector,
}

impl<'a, M: RunoffModel> Problem<'a, M> {
    fn new(model: &'a M, series: &'a HydroSeries, plan: &CalibrationPlan) -> Result<Self> {
        let windows = plan.windows(series)?;
        let observed_cal = RealVector::new(series.flow()[windows.cal.0..windows.cal.1].to_vec())?;
        Ok(Problem {
            model,
            series,
            windows,
            observed_cal,
        })
    }

    fn simulate(&self, params: &M::Params, until: usize) -> Vec<f64> {
        self.model.simulate(
            params,
            &self.series.precip()[..until],
            &self.series.pet()[..until],
        )
    }

    fn cal_pair(&self, params: &M::Params) -> Result<SeriesPair> {
        let (a, b) = self.windows.cal;
        let sim = self.simulate(params, b);
        SeriesPair::new(
            RealVector::new(sim[a..b].to_vec())?,
            self.observed_cal.clone(),
        )
    }

    fn objective(&self, loss: TrainingLoss, u: &[f64]) -> f64 {
        let params = self.model.params_from_unbounded(u);
        self.cal_pair(&params)
            .and_then(|pair| loss.evaluate(&pair))
            .unwrap_or(f64::INFINITY)
    }

    fn minimize_from(
        &self,
        loss: TrainingLoss,
        start: &[f64],
        config: &MinimizerConfig,
    ) -> Result<(Vec<f64>, f64, usize)> {
        let m = minimize(|u| self.objective(loss, u), start, config)?;
        Ok((m.point, m.value, m.evaluations))
    }

    fn row(
        &self,
        loss: TrainingLoss,
        params: M::Params,
        evaluations: usize,
    ) -> Result<CalibrationRow<M::Params>> {
        let (a, b) = self.windows.val;
        let sim = self.simulate(&params, b);
        let val_pair = SeriesPair::new(
            RealVector::new(sim[a..b].to_vec())?,
            RealVector::new(self.series.flow()[a..b].to_vec())?,
        )?;
        Ok(CalibrationRow {
            loss,
            calibration: PeriodMetrics::of(&self.cal_pair(&params)?)?,
            validation: PeriodMetrics::of(&val_pair)?,
            validation_vbar_mean: v_mean_avg(&val_pair),
            params,
            evaluations,
        })
    }
}

/// Calibrates the bucket model under one loss.
pub fn calibrate(
    series: &HydroSeries,
    plan: &CalibrationPlan,
    loss: TrainingLoss,
    config: &MinimizerConfig,
) -> Result<CalibrationRow<<BucketModel as RunoffModel>::Params>> {
    calibrate_model(&BucketModel, series, plan, loss, config)
}

/// Calibrates any [`RunoffModel`] under one loss, starting from its default
/// parameters.
pub fn calibrate_model<M: RunoffModel>(
    model: &M,
    series: &HydroSeries,
    plan: &CalibrationPlan,
    loss: TrainingLoss,
    config: &MinimizerConfig,
) -> Result<CalibrationRow<M::Params>> {
    let problem = Problem::new(model, series, plan)?;
    let start = model.to_unbounded(&model.default_params());
    let (u, _, evaluations) = problem.minimize_from(loss, &start, config)?;
    problem.row(loss, model.params_from_unbounded(&u), evaluations)
}

/// Calibrates the bucket model under each loss.
pub fn calibrate_all(
    series: &HydroSeries,
    plan: &CalibrationPlan,
    losses: &[TrainingLoss],
    config: &MinimizerConfig,
) -> Result<CalibrationReport<<BucketModel as RunoffModel>::Params>> {
    calibrate_all_model(&BucketModel, series, plan, losses, config)
}

/// Calibrates under each loss, then re-starts any loss whose optimum is
/// beaten on its own objective by another row's parameters, from those
/// parameters, until no row is beaten.
pub fn calibrate_all_model<M: RunoffModel>(
    model: &M,
    series: &HydroSeries,
    plan: &CalibrationPlan,
    losses: &[TrainingLoss],
    config: &MinimizerConfig,
) -> Result<CalibrationReport<M::Params>> {
    if losses.is_empty() {
        return Err(Error::invalid("at least one loss is required"));
    }
    for (i, l) in losses.iter().enumerate() {
        if losses[..i].contains(l) {
            return Err(Error::invalid(format!("loss '{l}' requested twice")));
        }
    }
    let problem = Problem::new(model, series, plan)?;
    let start = model.to_unbounded(&model.default_params());

    // (loss, point, own objective value, evaluations)
    let mut fits = Vec::with_capacity(losses.len());
    for &loss in losses {
        let (u, v, evals) = problem.minimize_from(loss, &start, config)?;
        fits.push((loss, u, v, evals));
    }

    const MAX_PASSES: usize = 8;
    for _ in 0..MAX_PASSES {
        let mut changed = false;
        for i in 0..fits.len() {
            let loss = fits[i].0;
            let best_other = (0..fits.len())
                .filter(|&j| j != i)
                .map(|j| (j, problem.objective(loss, &fits[j].1)))
                .filter(|(_, v)| *v < fits[i].2)
                .min_by(|a, b| a.1.total_cmp(&b.1));
            if let Some((j, _)) = best_other {
                let from = fits[j].1.clone();
                let (u, v, evals) = problem.minimize_from(loss, &from, config)?;
                fits[i].1 = u;
                fits[i].2 = v;
                fits[i].3 += evals;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let rows = fits
        .into_iter()
        .map(|(loss, u, _, evals)| problem.row(loss, model.params_from_unbounded(&u), evals))
        .collect::<Result<Vec<_>>>()?;
    Ok(CalibrationReport { plan: *plan, rows })
}
