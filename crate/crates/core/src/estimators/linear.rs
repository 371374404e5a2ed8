//! Simple linear fits `z = a·x + b·1` under squared error, `L_NR2` and `L_W`.

use serde::Serialize;

use super::minimize::{minimize, MinimizerConfig};
use crate::error::{Error, Result};
use crate::losses::{l_nr2, l_w, mse, SeriesPair, TrainingLoss};
use crate::stats::{self, l2_norm, pearson, sign, RealVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FitMethod {
    ClosedForm,
    Numerical,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinearFitResult {
    pub slope: f64,
    pub intercept: f64,
    /// Training loss of the fitted predictions.
    pub achieved_loss: f64,
    pub loss: TrainingLoss,
    pub method: FitMethod,
    /// Set when the `L_NR2` fit has zero correlation and the slope sign is arbitrary.
    pub degenerate: bool,
}

impl LinearFitResult {
    pub fn predict(&self, x: &RealVector) -> Result<RealVector> {
        x.map(|v| self.slope * v + self.intercept)
    }

    /// Scores the fit on `(x, y)` with its own training loss.
    pub fn rescore(&self, x: &RealVector, y: &RealVector) -> Result<f64> {
        let pair = SeriesPair::new(self.predict(x)?, y.clone())?;
        self.loss.evaluate(&pair)
    }
}

fn check_design(x: &RealVector, y: &RealVector) -> Result<()> {
    stats::check_same_len(x.len(), y.len())?;
    if x.is_constant() {
        return Err(Error::SingularDesign("predictor is constant".into()));
    }
    Ok(())
}

/// Ordinary least squares: `â = ρ·‖y_c‖/‖x_c‖`, `b̂ = μ(y) − â·μ(x)`.
pub fn fit_linear_ols(x: &RealVector, y: &RealVector) -> Result<LinearFitResult> {
    check_design(x, y)?;
    let slope = if y.is_constant() {
        0.0
    } else {
        let xc = x.center();
        let yc = y.center();
        stats::dot(xc.as_slice(), yc.as_slice()) / stats::dot(xc.as_slice(), xc.as_slice())
    };
    let intercept = y.mean() - slope * x.mean();
    let mut fit = LinearFitResult {
        slope,
        intercept,
        achieved_loss: 0.0,
        loss: TrainingLoss::Se,
        method: FitMethod::ClosedForm,
        degenerate: false,
    };
    fit.achieved_loss = mse(&SeriesPair::new(fit.predict(x)?, y.clone())?);
    Ok(fit)
}

/// Closed-form `L_NR2` fit: `â = sign(ρ)·‖y_c‖/‖x_c‖`, `b̂ = μ(y) − â·μ(x)`,
/// with achieved loss `(1 − |ρ|)/2`.
///
/// At `ρ = 0` both signs minimize the loss (value ½); the positive slope is
/// returned and `degenerate` is set.
pub fn fit_linear_lnr2(x: &RealVector, y: &RealVector) -> Result<LinearFitResult> {
    check_design(x, y)?;
    if y.is_constant() {
        return Err(Error::undefined(
            "L_NR2 linear fit needs non-constant observations",
        ));
    }
    let rho = pearson(x, y)?;
    let ratio = l2_norm(y.center().as_slice()) / l2_norm(x.center().as_slice());
    let degenerate = rho == 0.0;
    let slope = if degenerate { ratio } else { sign(rho) * ratio };
    let intercept = y.mean() - slope * x.mean();
    let mut fit = LinearFitResult {
        slope,
        intercept,
        achieved_loss: 0.0,
        loss: TrainingLoss::Lnr2,
        method: FitMethod::ClosedForm,
        degenerate,
    };
    fit.achieved_loss = l_nr2(&SeriesPair::new(fit.predict(x)?, y.clone())?)?;
    Ok(fit)
}

/// Numerical `L_W` fit by simplex descent, warm-started from the OLS and the
/// `L_NR2` solutions; the better of the two runs is returned.
pub fn fit_linear_lw(
    x: &RealVector,
    y: &RealVector,
    config: &MinimizerConfig,
) -> Result<LinearFitResult> {
    check_design(x, y)?;
    if y.is_constant() {
        return Err(Error::undefined(
            "L_W linear fit needs non-constant observations",
        ));
    }
    let objective = linear_objective(x, y, TrainingLoss::Lw);
    let ols = fit_linear_ols(x, y)?;
    let nr2 = fit_linear_lnr2(x, y)?;
    let mut best: Option<(Vec<f64>, f64)> = None;
    for start in [[ols.slope, ols.intercept], [nr2.slope, nr2.intercept]] {
        let m = minimize(&objective, &start, config)?;
        if best.as_ref().is_none_or(|(_, v)| m.value < *v) {
            best = Some((m.point, m.value));
        }
    }
    let (point, _) = best.expect("two starts");
    let mut fit = LinearFitResult {
        slope: point[0],
        intercept: point[1],
        achieved_loss: 0.0,
        loss: TrainingLoss::Lw,
        method: FitMethod::Numerical,
        degenerate: false,
    };
    fit.achieved_loss = l_w(&SeriesPair::new(fit.predict(x)?, y.clone())?)?;
    Ok(fit)
}

/// `(a, b) ↦ loss(a·x + b·1, y)`; undefined points map to `+∞`.
pub fn linear_objective<'a>(
    x: &'a RealVector,
    y: &'a RealVector,
    loss: TrainingLoss,
) -> impl Fn(&[f64]) -> f64 + 'a {
    move |p: &[f64]| {
        let z: Vec<f64> = x.iter().map(|v| p[0] * v + p[1]).collect();
        RealVector::new(z)
            .and_then(|z| SeriesPair::new(z, y.clone()))
            .and_then(|pair| loss.evaluate(&pair))
            .unwrap_or(f64::INFINITY)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn v(values: &[f64]) -> RealVector {
        RealVector::new(values.to_vec()).unwrap()
    }

    #[test]
    fn ols_examples() {
        let x = v(&[1.0, 2.0, 3.0]);
        let fit = fit_linear_ols(&x, &v(&[2.0, 4.0, 6.0])).unwrap();
        assert_relative_eq!(fit.slope, 2.0, epsilon = 1e-14);
        assert_relative_eq!(fit.intercept, 0.0, epsilon = 1e-14);
        let fit = fit_linear_ols(&x, &v(&[5.0, 5.0, 5.0])).unwrap();
        assert_eq!((fit.slope, fit.intercept), (0.0, 5.0));

        let x = v(&[0.2, 1.5, 3.1, 4.0, 7.7]);
        let y = v(&[1.0, -0.5, 2.2, 6.1, 3.3]);
        let fit = fit_linear_ols(&x, &y).unwrap();
        let residual: f64 = fit
            .predict(&x)
            .unwrap()
            .iter()
            .zip(&y)
            .map(|(z, y)| y - z)
            .sum();
        assert!(residual.abs() < 1e-12);
        assert!(matches!(
            fit_linear_ols(&v(&[1.0, 1.0]), &v(&[1.0, 2.0])),
            Err(Error::SingularDesign(_))
        ));
    }

    #[test]
    fn lnr2_examples() {
        let x = v(&[1.0, 2.0, 3.0]);
        let fit = fit_linear_lnr2(&x, &v(&[2.0, 4.0, 6.0])).unwrap();
        assert_relative_eq!(fit.slope, 2.0, epsilon = 1e-14);
        assert_relative_eq!(fit.intercept, 0.0, epsilon = 1e-14);
        assert_relative_eq!(fit.achieved_loss, 0.0, epsilon = 1e-15);

        let fit = fit_linear_lnr2(&x, &v(&[-1.0, -2.0, -3.0])).unwrap();
        assert_relative_eq!(fit.slope, -1.0, epsilon = 1e-14);
        assert_relative_eq!(fit.intercept, 0.0, epsilon = 1e-14);
        assert_relative_eq!(fit.achieved_loss, 0.0, epsilon = 1e-15);

        // ρ = 1/2 and ‖y_c‖ = ‖x_c‖, so the fitted line is z = x.
        let y = v(&[1.0, 3.0, 2.0]);
        let fit = fit_linear_lnr2(&x, &y).unwrap();
        assert_relative_eq!(fit.slope, 1.0, epsilon = 1e-14);
        assert_relative_eq!(fit.intercept, 0.0, epsilon = 1e-14);
        assert_relative_eq!(fit.achieved_loss, 0.25, epsilon = 1e-15);
        let numerical = minimize(
            linear_objective(&x, &y, TrainingLoss::Lnr2),
            &[0.5, 0.5],
            &MinimizerConfig::default(),
        )
        .unwrap();
        assert!(numerical.value >= fit.achieved_loss - 1e-12);
    }

    #[test]
    fn lnr2_zero_correlation_is_degenerate() {
        let x = v(&[1.0, 2.0, 3.0]);
        let y = v(&[1.0, 0.0, 1.0]);
        let fit = fit_linear_lnr2(&x, &y).unwrap();
        assert!(fit.degenerate);
        // ‖y_c‖/‖x_c‖ = sqrt(2/3)/sqrt(2)
        let ratio = (1.0_f64 / 3.0).sqrt();
        assert_relative_eq!(fit.slope, ratio, epsilon = 1e-15);
        assert_relative_eq!(fit.intercept, 2.0 / 3.0 - 2.0 * ratio, epsilon = 1e-15);
        assert_relative_eq!(fit.achieved_loss, 0.5, epsilon = 1e-15);
        // The mirrored slope is an equally good minimizer; the flat line is the worst case.
        let objective = linear_objective(&x, &y, TrainingLoss::Lnr2);
        assert_relative_eq!(
            objective(&[-ratio, 2.0 / 3.0 + 2.0 * ratio]),
            0.5,
            epsilon = 1e-15
        );
        assert_eq!(objective(&[0.0, y.mean()]), 1.0);
        assert!(fit_linear_lnr2(&x, &v(&[1.0, 1.0, 1.0])).is_err());
    }

    #[test]
    fn lw_examples() {
        let x = v(&[1.0, 2.0, 3.0]);
        let y = v(&[2.0, 4.0, 6.0]);
        let fit = fit_linear_lw(&x, &y, &MinimizerConfig::default()).unwrap();
        assert_eq!(fit.method, FitMethod::Numerical);
        assert!((fit.slope - 2.0).abs() < 1e-8 && fit.intercept.abs() < 1e-8);
        assert!(fit.achieved_loss < 1e-15);

        let x = v(&[0.1, 0.9, 2.4, 3.3, 5.0, 6.2]);
        let y = v(&[1.2, 0.3, 4.4, 2.9, 8.0, 5.5]);
        let fit = fit_linear_lw(&x, &y, &MinimizerConfig::default()).unwrap();
        assert_eq!(fit.rescore(&x, &y).unwrap(), fit.achieved_loss);
        let ols = fit_linear_ols(&x, &y).unwrap();
        let at_ols = linear_objective(&x, &y, TrainingLoss::Lw)(&[ols.slope, ols.intercept]);
        assert!(fit.achieved_loss <= at_ols);
    }
}
