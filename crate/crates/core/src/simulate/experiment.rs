//! The two seeded simulation experiments: constant "climatology" predictions
//! of a Gaussian variable, and linear fits to a skewed linear model.

use std::collections::BTreeMap;

use serde::Serialize;

use super::rng::RngState;
use super::sample::{sample, DistributionSpec};
use crate::error::{Error, Result};
use crate::estimators::{
    fit_linear_lnr2, fit_linear_lw, fit_linear_ols, LinearFitResult, MinimizerConfig,
};
use crate::losses::{l_nr2, l_w, mse, nse, v_mean_avg, SeriesPair};
use crate::stats::RealVector;

/// Fixed intercept of the linear experiment.
pub const LINEAR_INTERCEPT: f64 = 2.1;
/// Predictor distribution of the linear experiment.
pub const LINEAR_PREDICTOR: DistributionSpec = DistributionSpec::Gamma {
    scale: 1.8,
    shape: 0.4,
};
/// Additive error distribution of the linear experiment.
pub const LINEAR_ERROR: DistributionSpec = DistributionSpec::Lognormal {
    mu: 0.0,
    sigma: 2.0,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExperimentKind {
    Climatology,
    Linear,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentMetadata {
    pub kind: ExperimentKind,
    pub seed: u64,
    pub stream_id: u64,
    pub n_total: usize,
    pub split: usize,
    pub n_test: usize,
    pub true_parameters: BTreeMap<String, f64>,
    /// Population standard deviation of the test observations.
    pub test_y_std: f64,
}

/// One model's estimates and test-set scores.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelRow {
    pub model: String,
    pub training: String,
    /// Constant prediction for climatology models.
    pub intercept: f64,
    pub slope: Option<f64>,
    pub mse: f64,
    pub one_minus_nse: f64,
    pub lnr2: f64,
    pub lw: f64,
    pub vbar_mean: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub metadata: ExperimentMetadata,
    pub models: Vec<ModelRow>,
}

pub const CSV_HEADER: [&str; 12] = [
    "kind",
    "seed",
    "a1",
    "model",
    "training",
    "intercept",
    "slope",
    "mse",
    "one_minus_nse",
    "lnr2",
    "lw",
    "vbar_mean",
];

impl ExperimentReport {
    pub fn model(&self, name: &str) -> Option<&ModelRow> {
        self.models.iter().find(|m| m.model == name)
    }

    /// CSV records (without header), one per model.
    pub fn csv_records(&self) -> Vec<Vec<String>> {
        let kind = match self.metadata.kind {
            ExperimentKind::Climatology => "climatology",
            ExperimentKind::Linear => "linear",
        };
        let a1 = self
            .metadata
            .true_parameters
            .get("a1")
            .map(|v| v.to_string())
            .unwrap_or_default();
        self.models
            .iter()
            .map(|m| {
                vec![
                    kind.to_string(),
                    self.metadata.seed.to_string(),
                    a1.clone(),
                    m.model.clone(),
                    m.training.clone(),
                    m.intercept.to_string(),
                    m.slope.map(|s| s.to_string()).unwrap_or_default(),
                    m.mse.to_string(),
                    m.one_minus_nse.to_string(),
                    m.lnr2.to_string(),
                    m.lw.to_string(),
                    m.vbar_mean.to_string(),
                ]
            })
            .collect()
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_HEADER).map_err(csv_error)?;
        for r in self.csv_records() {
            w.write_record(&r).map_err(csv_error)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::invalid(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::invalid(e.to_string())
}

fn check_split(n_total: usize, split: usize) -> Result<()> {
    if split == 0 || split >= n_total {
        return Err(Error::invalid(format!(
            "split must satisfy 1 <= split < n_total, got split={split}, n_total={n_total}"
        )));
    }
    Ok(())
}

fn score(
    model: &str,
    training: &str,
    intercept: f64,
    slope: Option<f64>,
    z: RealVector,
    y: &RealVector,
) -> Result<ModelRow> {
    let pair = SeriesPair::new(z, y.clone())?;
    Ok(ModelRow {
        model: model.to_string(),
        training: training.to_string(),
        intercept,
        slope,
        mse: mse(&pair),
        one_minus_nse: 1.0 - nse(&pair)?,
        lnr2: l_nr2(&pair)?,
        lw: l_w(&pair)?,
        vbar_mean: v_mean_avg(&pair),
    })
}

/// Trains the constants `μ`, `μ − σ`, `μ + σ` on the first `split` draws and
/// scores them on the rest.
pub fn run_climatology_experiment(
    n_total: usize,
    split: usize,
    spec: &DistributionSpec,
    mut rng: RngState,
) -> Result<ExperimentReport> {
    check_split(n_total, split)?;
    let DistributionSpec::Gaussian { mean, std } = *spec else {
        return Err(Error::invalid(
            "the climatology experiment samples a gaussian",
        ));
    };
    let (seed, stream_id) = (rng.seed(), rng.stream_id());
    let y = sample(spec, n_total, &mut rng)?;
    let train = y.slice(0, split)?;
    let test = y.slice(split, n_total)?;
    let (m, s) = (train.mean(), train.std());
    let n_test = test.len();

    let models = [
        ("#1", "mean", m),
        ("#2", "mean-std", m - s),
        ("#3", "mean+std", m + s),
    ]
    .into_iter()
    .map(|(name, training, theta)| {
        score(
            name,
            training,
            theta,
            None,
            RealVector::constant(theta, n_test)?,
            &test,
        )
    })
    .collect::<Result<Vec<_>>>()?;

    Ok(ExperimentReport {
        metadata: ExperimentMetadata {
            kind: ExperimentKind::Climatology,
            seed,
            stream_id,
            n_total,
            split,
            n_test,
            true_parameters: BTreeMap::from([("mean".to_string(), mean), ("std".to_string(), std)]),
            test_y_std: test.std(),
        },
        models,
    })
}

/// Simulates `y = 2.1 + a1·x + ε` with `x ~ Gamma(scale 1.8, shape 0.4)` and
/// `ε ~ Lognormal(0, 2)` (all `x` drawn before all `ε`), fits SE, `L_NR2` and
/// `L_W` lines on the first `split` rows and scores them on the rest.
pub fn run_linear_experiment(
    a1: f64,
    n_total: usize,
    split: usize,
    mut rng: RngState,
    config: &MinimizerConfig,
) -> Result<ExperimentReport> {
    check_split(n_total, split)?;
    if !a1.is_finite() {
        return Err(Error::invalid("slope a1 must be finite"));
    }
    let (seed, stream_id) = (rng.seed(), rng.stream_id());
    let x = sample(&LINEAR_PREDICTOR, n_total, &mut rng)?;
    let eps = sample(&LINEAR_ERROR, n_total, &mut rng)?;
    let y = RealVector::new(
        x.iter()
            .zip(&eps)
            .map(|(x, e)| LINEAR_INTERCEPT + a1 * x + e)
            .collect::<Vec<_>>(),
    )?;
    let (x_train, y_train) = (x.slice(0, split)?, y.slice(0, split)?);
    let (x_test, y_test) = (x.slice(split, n_total)?, y.slice(split, n_total)?);

    let fits: [(&str, LinearFitResult); 3] = [
        ("#1", fit_linear_ols(&x_train, &y_train)?),
        ("#2", fit_linear_lnr2(&x_train, &y_train)?),
        ("#3", fit_linear_lw(&x_train, &y_train, config)?),
    ];
    let models = fits
        .iter()
        .map(|(name, fit)| {
            score(
                name,
                fit.loss.name(),
                fit.intercept,
                Some(fit.slope),
                fit.predict(&x_test)?,
                &y_test,
            )
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(ExperimentReport {
        metadata: ExperimentMetadata {
            kind: ExperimentKind::Linear,
            seed,
            stream_id,
            n_total,
            split,
            n_test: n_total - split,
            true_parameters: BTreeMap::from([
                ("a0".to_string(), LINEAR_INTERCEPT),
                ("a1".to_string(), a1),
                ("x_scale".to_string(), 1.8),
                ("x_shape".to_string(), 0.4),
                ("eps_mu".to_string(), 0.0),
                ("eps_sigma".to_string(), 2.0),
            ]),
            test_y_std: y_test.std(),
        },
        models,
    })
}

/// Largest pairwise relative gap `|a_i − a_j| / max(|a_i|, |a_j|)` between the
/// fitted slopes of a linear report.
pub fn max_relative_slope_gap(report: &ExperimentReport) -> f64 {
    let slopes: Vec<f64> = report.models.iter().filter_map(|m| m.slope).collect();
    let mut gap = 0.0_f64;
    for (i, a) in slopes.iter().enumerate() {
        for b in &slopes[i + 1..] {
            let scale = a.abs().max(b.abs());
            if scale > 0.0 {
                gap = gap.max((a - b).abs() / scale);
            }
        }
    }
    gap
}

#[cfg(test)]
mod tests {
    use super::*;

    const GAUSS: DistributionSpec = DistributionSpec::Gaussian {
        mean: 0.0,
        std: 1.0,
    };

    #[test]
    fn climatology_shape_and_ranking() {
        let r = run_climatology_experiment(1000, 500, &GAUSS, RngState::new(42, 0)).unwrap();
        assert_eq!(r.models.len(), 3);
        let (m1, m2, m3) = (&r.models[0], &r.models[1], &r.models[2]);
        assert!(m1.mse < m2.mse && m1.mse < m3.mse);
        assert!(m2.lnr2 < m1.lnr2 && m3.lnr2 < m1.lnr2);
        assert!(m2.lw < m1.lw && m3.lw < m1.lw);
        for m in &r.models {
            assert!((0.0..=1.0).contains(&m.lnr2) && (0.0..=1.0).contains(&m.lw));
        }
    }

    #[test]
    fn climatology_rejects_bad_split() {
        assert!(run_climatology_experiment(10, 10, &GAUSS, RngState::new(1, 0)).is_err());
        assert!(run_climatology_experiment(10, 0, &GAUSS, RngState::new(1, 0)).is_err());
        let gamma = DistributionSpec::Gamma {
            scale: 1.0,
            shape: 1.0,
        };
        assert!(run_climatology_experiment(10, 5, &gamma, RngState::new(1, 0)).is_err());
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_linear_experiment(
            6.0,
            400,
            200,
            RngState::new(9, 1),
            &MinimizerConfig::default(),
        )
        .unwrap();
        let b = run_linear_experiment(
            6.0,
            400,
            200,
            RngState::new(9, 1),
            &MinimizerConfig::default(),
        )
        .unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_csv().unwrap(), b.to_csv().unwrap());
    }

    #[test]
    fn csv_has_one_row_per_model() {
        let r = run_climatology_experiment(100, 50, &GAUSS, RngState::new(3, 0)).unwrap();
        let csv = r.to_csv().unwrap();
        assert_eq!(csv.lines().count(), 4);
        assert!(csv.starts_with("kind,seed,a1,model"));
    }
}
