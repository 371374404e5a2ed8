use std::io::Write;

use agreeloss::estimators::MinimizerConfig;
use agreeloss::hydro::{
    calibrate_all, synthetic_series, BucketParams, CalibrationPlan, HydroSeries,
};
use agreeloss::losses::TrainingLoss;
use agreeloss::simulate::{
    run_climatology_experiment, run_linear_experiment, sample, DistributionSpec, RngState,
};
use agreeloss::Error;
use chrono::NaiveDate;

fn day(y: i32, m: u32, d: u32) -> NaiveDate {
    NaiveDate::from_ymd_opt(y, m, d).unwrap()
}

#[test]
fn series_round_trips_through_a_file() {
    let truth = BucketParams::new(90.0, 0.2, 0.1).unwrap();
    let series =
        synthetic_series(day(2010, 3, 1), 400, &truth, 0.1, &mut RngState::new(5, 0)).unwrap();
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(series.to_csv().unwrap().as_bytes()).unwrap();
    let loaded = HydroSeries::load_csv(file.path()).unwrap();
    assert_eq!(loaded, series);
    assert_eq!(loaded.index_of(day(2010, 3, 31)), Some(30));
    assert_eq!(loaded.index_of(day(2010, 2, 28)), None);
}

#[test]
fn missing_file_is_an_io_error() {
    let dir = tempfile::tempdir().unwrap();
    let err = HydroSeries::load_csv(dir.path().join("absent.csv")).unwrap_err();
    assert!(matches!(err, Error::Io(_)), "{err:?}");
}

#[test]
fn streams_are_independent_and_replayable() {
    let spec = DistributionSpec::Gaussian {
        mean: 0.0,
        std: 1.0,
    };
    let a = sample(&spec, 64, &mut RngState::new(42, 0)).unwrap();
    let b = sample(&spec, 64, &mut RngState::new(42, 0)).unwrap();
    let c = sample(&spec, 64, &mut RngState::new(42, 1)).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn experiments_are_bit_identical_on_rerun() {
    let spec = DistributionSpec::Gaussian {
        mean: 3.0,
        std: 2.0,
    };
    let x = run_climatology_experiment(300, 150, &spec, RngState::new(9, 2)).unwrap();
    let y = run_climatology_experiment(300, 150, &spec, RngState::new(9, 2)).unwrap();
    assert_eq!(x.to_csv().unwrap(), y.to_csv().unwrap());

    let cfg = MinimizerConfig::default();
    let x = run_linear_experiment(6.0, 600, 300, RngState::new(9, 2), &cfg).unwrap();
    let y = run_linear_experiment(6.0, 600, 300, RngState::new(9, 2), &cfg).unwrap();
    assert_eq!(x, y);
    assert_eq!(x.metadata.true_parameters["a1"], 6.0);
}

#[test]
fn calibration_report_is_reproducible() {
    let truth = BucketParams::new(120.0, 0.06, 0.25).unwrap();
    let series = synthetic_series(
        day(2000, 1, 1),
        3 * 366,
        &truth,
        0.2,
        &mut RngState::new(1, 1),
    )
    .unwrap();
    let plan = CalibrationPlan {
        warmup_days: 200,
        calibration: "2000-08-01:2001-12-31".parse().unwrap(),
        validation: "2002-01-01:2002-12-31".parse().unwrap(),
    };
    let cfg = MinimizerConfig::default();
    let a = calibrate_all(&series, &plan, &TrainingLoss::ALL, &cfg).unwrap();
    let b = calibrate_all(&series, &plan, &TrainingLoss::ALL, &cfg).unwrap();
    assert_eq!(a, b);
    assert!(a.is_diagonal_dominant());
    assert!(calibrate_all(&series, &plan, &[TrainingLoss::Lw, TrainingLoss::Lw], &cfg).is_err());
    assert!(calibrate_all(&series, &plan, &[], &cfg).is_err());
}
