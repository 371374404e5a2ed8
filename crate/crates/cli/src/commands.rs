use agreeloss::estimators::{
    fit_constant_lnr2, fit_constant_lw, fit_linear_lnr2, fit_linear_lw, fit_linear_ols,
    ConstantProfile,
};
use agreeloss::hydro::{calibrate_all, CalibrationPlan, HydroSeries};
use agreeloss::losses::{Metric, MetricReport, Orientation, SeriesPair, TrainingLoss};
use agreeloss::simulate::{
    run_climatology_experiment, run_linear_experiment, DistributionSpec, RngState, CSV_HEADER,
};
use serde_json::json;

use crate::args::{
    CalibrateArgs, ConstantLoss, ExperimentArgs, ExperimentKind, FitConstantArgs, FitLinearArgs,
    MetricsArgs, MinimizerArgs, ProfileArgs,
};
use crate::error::{CliError, Exit};
use crate::input::{read_columns, read_file};
use crate::output::{cell, json_value, Document, Table};

/// A finished command: the document to print and the exit status to return.
pub struct Outcome {
    pub doc: Document,
    pub exit: Exit,
}

impl From<Document> for Outcome {
    fn from(doc: Document) -> Self {
        Outcome {
            doc,
            exit: Exit::Success,
        }
    }
}

fn orientation_name(o: Orientation) -> &'static str {
    match o {
        Orientation::Negative => "negative",
        Orientation::Positive => "positive",
    }
}

fn record_minimizer(doc: &mut Document, m: &MinimizerArgs) -> Result<(), CliError> {
    let config = m.config();
    config.validate()?;
    doc.set("minimizer", config);
    Ok(())
}

pub fn metrics(args: &MetricsArgs) -> Result<Outcome, CliError> {
    let mut doc = Document::new("metrics");
    doc.set("input", args.input.display().to_string());
    doc.set(
        "metrics",
        args.metrics
            .iter()
            .map(Metric::to_string)
            .collect::<Vec<_>>(),
    );
    doc.set("as_index", args.as_index);

    let (cols, digest) = read_columns(&args.input, &["z", "y"])?;
    doc.inputs.push(digest);
    let [z, y]: [_; 2] = cols.try_into().expect("two columns");
    let pair = SeriesPair::new(z, y)?;
    let report = MetricReport::evaluate(&pair, &args.metrics, args.as_index)?;

    let mut table = Table::new("metrics", &["metric", "value", "orientation"]);
    let mut rows = Vec::new();
    for e in report.entries() {
        table.push(vec![
            e.name.clone(),
            cell(e.value),
            orientation_name(e.orientation).into(),
        ]);
        rows.push(json!({
            "metric": e.name,
            "value": json_value(e.value),
            "orientation": orientation_name(e.orientation),
        }));
    }
    doc.result = json!({ "n": pair.len(), "metrics": rows });
    doc.tables.push(table);
    let exit = if report.has_undefined() {
        Exit::Undefined
    } else {
        Exit::Success
    };
    Ok(Outcome { doc, exit })
}

pub fn fit_constant(args: &FitConstantArgs) -> Result<Outcome, CliError> {
    let mut doc = Document::new("fit-constant");
    doc.set("input", args.input.display().to_string());
    doc.set("loss", args.loss.name());

    let (cols, digest) = read_columns(&args.input, &["y"])?;
    doc.inputs.push(digest);
    let y = &cols[0];
    let fit = match args.loss {
        ConstantLoss::Lw => fit_constant_lw(y)?,
        ConstantLoss::Lnr2 => fit_constant_lnr2(y)?,
    };
    let stats = ConstantProfile::new(y)?;

    let mut table = Table::new(
        "fit",
        &[
            "loss",
            "theta_minus",
            "theta_plus",
            "min_loss",
            "mean",
            "std",
            "mad",
        ],
    );
    table.push(vec![
        args.loss.name().into(),
        fit.theta_minus.to_string(),
        fit.theta_plus.to_string(),
        fit.min_loss.to_string(),
        stats.mean.to_string(),
        stats.std.to_string(),
        stats.mad.to_string(),
    ]);
    doc.result = json!({ "n": y.len(), "fit": fit, "statistics": stats });
    doc.tables.push(table);
    Ok(doc.into())
}

pub fn fit_linear(args: &FitLinearArgs) -> Result<Outcome, CliError> {
    let mut doc = Document::new("fit-linear");
    doc.set("loss", args.loss.name());
    doc.set("train", args.train.display().to_string());
    doc.set("test", args.test.as_ref().map(|p| p.display().to_string()));
    record_minimizer(&mut doc, &args.minimizer)?;

    let (cols, digest) = read_columns(&args.train, &["x", "y"])?;
    doc.inputs.push(digest);
    let (x, y) = (&cols[0], &cols[1]);
    let fit = match args.loss {
        TrainingLoss::Se => fit_linear_ols(x, y)?,
        TrainingLoss::Lnr2 => fit_linear_lnr2(x, y)?,
        TrainingLoss::Lw => fit_linear_lw(x, y, &args.minimizer.config())?,
    };

    let mut table = Table::new(
        "fit",
        &[
            "loss",
            "method",
            "slope",
            "intercept",
            "train_loss",
            "degenerate",
        ],
    );
    let method = serde_json::to_value(fit.method).expect("method serializes");
    table.push(vec![
        fit.loss.name().into(),
        method.as_str().unwrap_or_default().into(),
        fit.slope.to_string(),
        fit.intercept.to_string(),
        fit.achieved_loss.to_string(),
        fit.degenerate.to_string(),
    ]);
    doc.tables.push(table);

    let mut exit = Exit::Success;
    let mut test_json = serde_json::Value::Null;
    if let Some(path) = &args.test {
        let (cols, digest) = read_columns(path, &["x", "y"])?;
        doc.inputs.push(digest);
        let pair = SeriesPair::new(fit.predict(&cols[0])?, cols[1].clone())?;
        let metrics = [Metric::Mse, Metric::Lnr2, Metric::Lw, Metric::VbarMean];
        let report = MetricReport::evaluate(&pair, &metrics, false)?;
        let mut table = Table::new("test", &["metric", "value"]);
        let mut rows = serde_json::Map::new();
        for e in report.entries() {
            table.push(vec![e.name.clone(), cell(e.value)]);
            rows.insert(e.name.clone(), json_value(e.value));
        }
        if report.has_undefined() {
            exit = Exit::Undefined;
        }
        doc.tables.push(table);
        test_json = json!({ "n": pair.len(), "metrics": rows });
    }
    doc.result = json!({ "n_train": x.len(), "fit": fit, "test": test_json });
    Ok(Outcome { doc, exit })
}

pub fn profile(args: &ProfileArgs) -> Result<Outcome, CliError> {
    let mut doc = Document::new("profile");
    doc.set("loss", args.loss.name());
    doc.set("input", args.input.display().to_string());
    doc.set("min", args.min);
    doc.set("max", args.max);
    doc.set("steps", args.steps);

    if args.steps < 2 {
        return Err(CliError::Input(format!(
            "--steps must be at least 2, got {}",
            args.steps
        )));
    }
    if !(args.min.is_finite() && args.max.is_finite() && args.min < args.max) {
        return Err(CliError::Input(format!(
            "--min ({}) must be finite and below --max ({})",
            args.min, args.max
        )));
    }
    let (cols, digest) = read_columns(&args.input, &["y"])?;
    doc.inputs.push(digest);
    let p = ConstantProfile::new(&cols[0])?;
    let (value, fit): (fn(&ConstantProfile, f64) -> f64, _) = match args.loss {
        ConstantLoss::Lw => (ConstantProfile::lw, fit_constant_lw(&cols[0])?),
        ConstantLoss::Lnr2 => (ConstantProfile::lnr2, fit_constant_lnr2(&cols[0])?),
    };

    let last = (args.steps - 1) as f64;
    let mut rows: Vec<(f64, &str)> = (0..args.steps)
        .map(|k| {
            let t = k as f64 / last;
            ((1.0 - t) * args.min + t * args.max, "grid")
        })
        .collect();
    rows.push((fit.theta_minus, "minimum"));
    rows.push((fit.theta_plus, "minimum"));
    rows.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut table = Table::new("profile", &["theta", "loss", "kind"]);
    let mut json_rows = Vec::with_capacity(rows.len());
    for (theta, kind) in rows {
        // Minimum rows carry the closed-form value rather than a re-evaluation.
        let v = if kind == "minimum" {
            fit.min_loss
        } else {
            value(&p, theta)
        };
        table.push(vec![theta.to_string(), v.to_string(), kind.into()]);
        json_rows.push(json!({ "theta": theta, "loss": v, "kind": kind }));
    }
    doc.result = json!({ "statistics": p, "rows": json_rows });
    doc.tables.push(table);
    Ok(doc.into())
}

pub fn experiment(args: &ExperimentArgs) -> Result<Outcome, CliError> {
    let (name, default_n) = match args.kind {
        ExperimentKind::Climatology => ("climatology", 1000),
        ExperimentKind::Linear => ("linear", 4000),
    };
    let n = args.n.unwrap_or(default_n);
    let split = args.split.unwrap_or(n / 2);
    let mut doc = Document::new("experiment");
    doc.seed = Some(args.seed);
    doc.set("kind", name);
    doc.set("seed", args.seed);
    doc.set("stream", args.stream);
    doc.set("n", n);
    doc.set("split", split);

    let rng = RngState::new(args.seed, args.stream);
    let reports = match args.kind {
        ExperimentKind::Climatology => {
            doc.set("mean", args.mean);
            doc.set("std", args.std);
            let spec = DistributionSpec::Gaussian {
                mean: args.mean,
                std: args.std,
            };
            spec.validate()?;
            vec![run_climatology_experiment(n, split, &spec, rng)?]
        }
        ExperimentKind::Linear => {
            doc.set("a1", &args.a1);
            record_minimizer(&mut doc, &args.minimizer)?;
            if args.a1.is_empty() {
                return Err(CliError::Input("--a1 needs at least one value".into()));
            }
            // Every slope reuses the same draws, so blocks differ only in a1.
            args.a1
                .iter()
                .map(|&a1| {
                    run_linear_experiment(a1, n, split, rng.clone(), &args.minimizer.config())
                })
                .collect::<Result<Vec<_>, _>>()?
        }
    };

    let mut table = Table::new("models", &CSV_HEADER);
    for r in &reports {
        for row in r.csv_records() {
            table.push(row);
        }
    }
    doc.tables.push(table);
    doc.result = json!({ "reports": reports });
    Ok(doc.into())
}

pub fn calibrate(args: &CalibrateArgs) -> Result<Outcome, CliError> {
    let mut doc = Document::new("calibrate");
    doc.set("data", args.data.display().to_string());
    doc.set("warmup_days", args.warmup_days);
    doc.set("cal", args.cal.to_string());
    doc.set("val", args.val.to_string());
    doc.set(
        "loss",
        args.loss.iter().map(|l| l.name()).collect::<Vec<_>>(),
    );
    record_minimizer(&mut doc, &args.minimizer)?;

    let (bytes, digest) = read_file(&args.data)?;
    doc.inputs.push(digest);
    let series = HydroSeries::from_reader(bytes.as_slice())
        .map_err(|e| CliError::Input(format!("{}: {e}", args.data.display())))?;
    let plan = CalibrationPlan {
        warmup_days: args.warmup_days,
        calibration: args.cal,
        validation: args.val,
    };
    plan.validate(&series)
        .map_err(|e| CliError::Input(e.to_string()))?;
    let report = calibrate_all(&series, &plan, &args.loss, &args.minimizer.config())?;

    let metric_header = ["training", "mse", "lnr2", "lw"];
    let mut cal = Table::new("calibration", &metric_header);
    let mut val = Table::new("validation", &metric_header);
    let mut vbar = Table::new("validation_vbar_mean", &["training", "vbar_mean"]);
    let mut params = Table::new(
        "parameters",
        &["training", "capacity", "recession", "split", "evaluations"],
    );
    for row in &report.rows {
        let name = row.loss.name().to_string();
        for (table, m) in [(&mut cal, &row.calibration), (&mut val, &row.validation)] {
            table.push(vec![
                name.clone(),
                m.mse.to_string(),
                m.lnr2.to_string(),
                m.lw.to_string(),
            ]);
        }
        vbar.push(vec![name.clone(), row.validation_vbar_mean.to_string()]);
        params.push(vec![
            name,
            row.params.capacity.to_string(),
            row.params.recession.to_string(),
            row.params.split.to_string(),
            row.evaluations.to_string(),
        ]);
    }
    doc.tables.extend([cal, val, vbar, params]);
    doc.result = json!({
        "days": series.len(),
        "diagonal_dominant": report.is_diagonal_dominant(),
        "report": report,
    });
    Ok(doc.into())
}
