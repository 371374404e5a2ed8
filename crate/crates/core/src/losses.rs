//! Average losses, skill scores and identification functions on a
//! prediction/observation pair.
//!
//! The agreement family (`l_w`, `l_nr2`, `l_lmc`, `l_kbb`, `l_nrp`) is
//! bounded in `[0, 1]` and is only defined when the observations are
//! non-constant or the predictions differ from them; outside that domain the
//! functions return [`Error::Undefined`].

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::stats::{self, lp_norm_of, mean_of, sum, RealVector};

/// Aligned predictions `z` and observations `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesPair {
    z: RealVector,
    y: RealVector,
    y_nonconstant: bool,
    z_differs: bool,
}

impl SeriesPair {
    pub fn new(z: RealVector, y: RealVector) -> Result<Self> {
        stats::check_same_len(z.len(), y.len())?;
        let y_nonconstant = !y.is_constant();
        let z_differs = z.iter().zip(&y).any(|(a, b)| a != b);
        Ok(SeriesPair {
            z,
            y,
            y_nonconstant,
            z_differs,
        })
    }

    pub fn from_vecs(z: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        Self::new(RealVector::new(z)?, RealVector::new(y)?)
    }

    pub fn z(&self) -> &RealVector {
        &self.z
    }

    pub fn y(&self) -> &RealVector {
        &self.y
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn y_nonconstant(&self) -> bool {
        self.y_nonconstant
    }

    pub fn z_differs(&self) -> bool {
        self.z_differs
    }

    /// Whether the agreement losses are defined for this pair.
    pub fn agreement_defined(&self) -> bool {
        self.y_nonconstant || self.z_differs
    }

    fn require_agreement(&self, name: &str) -> Result<()> {
        if self.agreement_defined() {
            Ok(())
        } else {
            Err(Error::undefined(format!(
                "{name} needs non-constant observations or predictions that differ from them"
            )))
        }
    }

    fn errors(&self) -> impl Iterator<Item = f64> + '_ {
        self.z.iter().zip(&self.y).map(|(z, y)| z - y)
    }
}

/// Mean absolute error.
pub fn mae(pair: &SeriesPair) -> f64 {
    sum(pair.errors().map(f64::abs)) / pair.len() as f64
}

/// Mean squared error.
pub fn mse(pair: &SeriesPair) -> f64 {
    sum(pair.errors().map(|e| e * e)) / pair.len() as f64
}

/// Nash–Sutcliffe efficiency: the MSE skill score against the observation mean.
pub fn nse(pair: &SeriesPair) -> Result<f64> {
    if !pair.y_nonconstant {
        return Err(Error::undefined("NSE needs non-constant observations"));
    }
    // MSE(1μ(y), y) = σ²(y)
    Ok(1.0 - mse(pair) / pair.y.variance())
}

/// Skill score `1 − L̄(z) / L̄(ref)` for a loss whose minimum is zero.
pub fn skill_score(loss_avg_z: f64, loss_avg_ref: f64) -> Result<f64> {
    if loss_avg_ref == 0.0 {
        return Err(Error::undefined(
            "reference loss is zero: the reference is already perfect",
        ));
    }
    Ok(1.0 - loss_avg_z / loss_avg_ref)
}

/// `|a|^p` with exact fast paths for the common exponents.
fn pow_abs(a: f64, p: f64) -> f64 {
    if p == 1.0 {
        a.abs()
    } else if p == 2.0 {
        a * a
    } else {
        a.abs().powf(p)
    }
}

/// Willmott's loss `L_W = 1 − d`.
pub fn l_w(pair: &SeriesPair) -> Result<f64> {
    l_kbb(pair, 2.0).map_err(|_| undefined_for("L_W"))
}

fn undefined_for(name: &str) -> Error {
    Error::undefined(format!(
        "{name} needs non-constant observations or predictions that differ from them"
    ))
}

/// Norm-ratio loss `‖z−y‖² / (‖z−1μ‖ + ‖1μ−y‖)²`.
pub fn l_nr2(pair: &SeriesPair) -> Result<f64> {
    pair.require_agreement("L_NR2")?;
    let m = pair.y.mean();
    let err: Vec<f64> = pair.errors().collect();
    let zm: Vec<f64> = pair.z.iter().map(|z| z - m).collect();
    let my: Vec<f64> = pair.y.iter().map(|y| m - y).collect();
    // Ratio of norms first, so that z = 1μ(y) gives exactly 1.
    let ratio = lp_norm_of(&err, 2.0) / (lp_norm_of(&zm, 2.0) + lp_norm_of(&my, 2.0));
    Ok((ratio * ratio).min(1.0))
}

/// `‖z−y‖₁ / (‖z−1f‖₁ + ‖1f−y‖₁)` for a caller-supplied benchmark `f`.
pub fn l_lmc(pair: &SeriesPair, benchmark: f64) -> Result<f64> {
    if !benchmark.is_finite() {
        return Err(Error::invalid("benchmark must be finite"));
    }
    let num = sum(pair.errors().map(f64::abs));
    let denom = sum(pair.z.iter().map(|z| (z - benchmark).abs()))
        + sum(pair.y.iter().map(|y| (benchmark - y).abs()));
    if denom == 0.0 {
        return Err(Error::undefined("L_LMC denominator is zero"));
    }
    Ok((num / denom).min(1.0))
}

/// [`l_lmc`] with the observation mean as benchmark.
pub fn l_lmc_mean(pair: &SeriesPair) -> Result<f64> {
    l_lmc(pair, pair.y.mean())
}

/// [`l_lmc`] with the observation median as benchmark.
pub fn l_lmc_median(pair: &SeriesPair) -> Result<f64> {
    l_lmc(pair, stats::median(&pair.y))
}

/// Generalized element-wise agreement loss
/// `Σ|zᵢ−yᵢ|^p / Σ(|zᵢ−μ| + |μ−yᵢ|)^p`; `p = ∞` takes maxima instead of sums.
pub fn l_kbb(pair: &SeriesPair, p: f64) -> Result<f64> {
    stats::check_exponent(p)?;
    pair.require_agreement("L_KBB")?;
    let m = mean_of(pair.y.as_slice());
    let spread = pair
        .z
        .iter()
        .zip(&pair.y)
        .map(|(z, y)| (z - m).abs() + (m - y).abs());
    let ratio = if p.is_infinite() {
        let num = pair.errors().fold(0.0_f64, |acc, e| acc.max(e.abs()));
        num / spread.fold(0.0_f64, f64::max)
    } else {
        sum(pair.errors().map(|e| pow_abs(e, p))) / sum(spread.map(|s| pow_abs(s, p)))
    };
    Ok(ratio.min(1.0))
}

/// Norm-ratio loss with the `L_p` mean as benchmark:
/// `‖z−y‖_p^p / (‖z−1m‖_p + ‖1m−y‖_p)^p`; `p = ∞` uses exponent 1 outside.
pub fn l_nrp(pair: &SeriesPair, p: f64) -> Result<f64> {
    stats::check_exponent(p)?;
    pair.require_agreement("L_NRp")?;
    let m = stats::lp_mean_of(pair.y.as_slice(), p);
    let err: Vec<f64> = pair.errors().collect();
    let zm: Vec<f64> = pair.z.iter().map(|z| z - m).collect();
    let my: Vec<f64> = pair.y.iter().map(|y| m - y).collect();
    let ratio = lp_norm_of(&err, p) / (lp_norm_of(&zm, p) + lp_norm_of(&my, p));
    let value = if p.is_infinite() {
        ratio
    } else {
        pow_abs(ratio, p)
    };
    Ok(value.min(1.0))
}

/// Empirical average of the mean identification function: the mean error.
pub fn v_mean_avg(pair: &SeriesPair) -> f64 {
    sum(pair.errors()) / pair.len() as f64
}

/// Empirical average of the median identification function, in `[−½, ½]`.
pub fn v_median_avg(pair: &SeriesPair) -> f64 {
    let hits = pair.errors().filter(|e| *e >= 0.0).count();
    hits as f64 / pair.len() as f64 - 0.5
}

/// The three losses used for model training.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TrainingLoss {
    /// Squared error; the average is the MSE.
    Se,
    Lnr2,
    Lw,
}

impl TrainingLoss {
    pub const ALL: [TrainingLoss; 3] = [TrainingLoss::Se, TrainingLoss::Lnr2, TrainingLoss::Lw];

    pub fn name(self) -> &'static str {
        match self {
            TrainingLoss::Se => "se",
            TrainingLoss::Lnr2 => "lnr2",
            TrainingLoss::Lw => "lw",
        }
    }

    pub fn evaluate(self, pair: &SeriesPair) -> Result<f64> {
        match self {
            TrainingLoss::Se => Ok(mse(pair)),
            TrainingLoss::Lnr2 => l_nr2(pair),
            TrainingLoss::Lw => l_w(pair),
        }
    }
}

impl fmt::Display for TrainingLoss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TrainingLoss {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "se" | "mse" => Ok(TrainingLoss::Se),
            "lnr2" => Ok(TrainingLoss::Lnr2),
            "lw" => Ok(TrainingLoss::Lw),
            other => Err(Error::invalid(format!(
                "unknown loss '{other}' (expected se, lnr2 or lw)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// Smaller is better.
    Negative,
    /// Larger is better.
    Positive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Benchmark {
    Mean,
    Median,
}

/// A named metric as accepted on the command line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Metric {
    Mae,
    Mse,
    Nse,
    OneMinusNse,
    Lw,
    Lnr2,
    Lmc(Benchmark),
    Kbb(f64),
    Nrp(f64),
    VbarMean,
    VbarMedian,
}

impl Metric {
    pub fn evaluate(&self, pair: &SeriesPair) -> Result<f64> {
        match *self {
            Metric::Mae => Ok(mae(pair)),
            Metric::Mse => Ok(mse(pair)),
            Metric::Nse => nse(pair),
            Metric::OneMinusNse => nse(pair).map(|v| 1.0 - v),
            Metric::Lw => l_w(pair),
            Metric::Lnr2 => l_nr2(pair),
            Metric::Lmc(Benchmark::Mean) => l_lmc_mean(pair),
            Metric::Lmc(Benchmark::Median) => l_lmc_median(pair),
            Metric::Kbb(p) => l_kbb(pair, p),
            Metric::Nrp(p) => l_nrp(pair, p),
            Metric::VbarMean => Ok(v_mean_avg(pair)),
            Metric::VbarMedian => Ok(v_median_avg(pair)),
        }
    }

    pub fn orientation(&self) -> Orientation {
        match self {
            Metric::Nse => Orientation::Positive,
            _ => Orientation::Negative,
        }
    }

    /// Bounded agreement-family member.
    pub fn is_agreement(&self) -> bool {
        matches!(
            self,
            Metric::Lw | Metric::Lnr2 | Metric::Lmc(_) | Metric::Kbb(_) | Metric::Nrp(_)
        )
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Metric::Mae => f.write_str("mae"),
            Metric::Mse => f.write_str("mse"),
            Metric::Nse => f.write_str("nse"),
            Metric::OneMinusNse => f.write_str("one_minus_nse"),
            Metric::Lw => f.write_str("lw"),
            Metric::Lnr2 => f.write_str("lnr2"),
            Metric::Lmc(Benchmark::Mean) => f.write_str("lmc:f=mean"),
            Metric::Lmc(Benchmark::Median) => f.write_str("lmc:f=median"),
            Metric::Kbb(p) => write!(f, "kbb:p={}", fmt_exponent(*p)),
            Metric::Nrp(p) => write!(f, "nrp:p={}", fmt_exponent(*p)),
            Metric::VbarMean => f.write_str("vbar_mean"),
            Metric::VbarMedian => f.write_str("vbar_median"),
        }
    }
}

fn fmt_exponent(p: f64) -> String {
    if p.is_infinite() {
        "inf".to_string()
    } else {
        p.to_string()
    }
}

fn parse_exponent(s: &str) -> Result<f64> {
    let p = match s {
        "inf" | "infinity" | "∞" => f64::INFINITY,
        _ => s
            .parse::<f64>()
            .map_err(|_| Error::invalid(format!("cannot parse exponent '{s}'")))?,
    };
    stats::check_exponent(p)?;
    Ok(p)
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let metric = match s {
            "mae" => Metric::Mae,
            "mse" => Metric::Mse,
            "nse" => Metric::Nse,
            "one_minus_nse" => Metric::OneMinusNse,
            "lw" => Metric::Lw,
            "lnr2" => Metric::Lnr2,
            "vbar_mean" => Metric::VbarMean,
            "vbar_median" => Metric::VbarMedian,
            "lmc:f=mean" => Metric::Lmc(Benchmark::Mean),
            "lmc:f=median" => Metric::Lmc(Benchmark::Median),
            _ => {
                if let Some(p) = s.strip_prefix("kbb:p=") {
                    Metric::Kbb(parse_exponent(p)?)
                } else if let Some(p) = s.strip_prefix("nrp:p=") {
                    Metric::Nrp(parse_exponent(p)?)
                } else {
                    return Err(Error::invalid(format!("unknown metric '{s}'")));
                }
            }
        };
        Ok(metric)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricEntry {
    pub name: String,
    /// `None` when the metric is mathematically undefined for the input.
    pub value: Option<f64>,
    pub orientation: Orientation,
}

/// Ordered list of named metric values without duplicate names.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct MetricReport {
    entries: Vec<MetricEntry>,
}

impl MetricReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(
        &mut self,
        name: impl Into<String>,
        value: Option<f64>,
        orientation: Orientation,
    ) -> Result<()> {
        let name = name.into();
        if self.entries.iter().any(|e| e.name == name) {
            return Err(Error::invalid(format!("duplicate metric '{name}'")));
        }
        self.entries.push(MetricEntry {
            name,
            value,
            orientation,
        });
        Ok(())
    }

    /// Evaluates each metric, recording undefined ones as `None`.
    /// With `as_index`, agreement losses `L` are reported as `1 − L`.
    pub fn evaluate(pair: &SeriesPair, metrics: &[Metric], as_index: bool) -> Result<Self> {
        let mut report = Self::new();
        for metric in metrics {
            let value = match metric.evaluate(pair) {
                Ok(v) => Some(v),
                Err(e) if e.is_undefined() => None,
                Err(e) => return Err(e),
            };
            if as_index && metric.is_agreement() {
                report.push(
                    format!("1-{metric}"),
                    value.map(|v| 1.0 - v),
                    Orientation::Positive,
                )?;
            } else {
                report.push(metric.to_string(), value, metric.orientation())?;
            }
        }
        Ok(report)
    }

    pub fn entries(&self) -> &[MetricEntry] {
        &self.entries
    }

    pub fn get(&self, name: &str) -> Option<&MetricEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn has_undefined(&self) -> bool {
        self.entries.iter().any(|e| e.value.is_none())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn pair(z: &[f64], y: &[f64]) -> SeriesPair {
        SeriesPair::from_vecs(z.to_vec(), y.to_vec()).unwrap()
    }

    #[test]
    fn pair_flags() {
        let p = pair(&[1.0, 1.0], &[1.0, 1.0]);
        assert!(!p.y_nonconstant() && !p.z_differs() && !p.agreement_defined());
        let p = pair(&[2.0, 1.0], &[1.0, 1.0]);
        assert!(p.z_differs() && p.agreement_defined());
        assert!(matches!(
            SeriesPair::from_vecs(vec![1.0], vec![1.0, 2.0]),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn mae_examples() {
        assert_eq!(mae(&pair(&[1.0, 4.0], &[1.0, 4.0])), 0.0);
        assert_eq!(mae(&pair(&[0.0, 1.0], &[0.0, 2.0])), 0.5);
        assert_eq!(mae(&pair(&[1.0, 1.0], &[0.0, 2.0])), 1.0);
    }

    #[test]
    fn mse_examples() {
        assert_eq!(mse(&pair(&[1.0, 4.0], &[1.0, 4.0])), 0.0);
        assert_eq!(mse(&pair(&[0.0, 1.0], &[0.0, 2.0])), 0.5);
        assert_eq!(mse(&pair(&[1.0, 1.0], &[0.0, 2.0])), 1.0);
    }

    #[test]
    fn nse_examples() {
        let y = [0.3, 1.9, -2.0, 4.4];
        assert_eq!(nse(&pair(&y, &y)).unwrap(), 1.0);
        let m = RealVector::new(y.to_vec()).unwrap().mean();
        assert_relative_eq!(nse(&pair(&[m; 4], &y)).unwrap(), 0.0, epsilon = 1e-15);
        assert_eq!(nse(&pair(&[0.0, 1.0], &[0.0, 2.0])).unwrap(), 0.5);
        assert!(matches!(
            nse(&pair(&[0.0, 1.0], &[2.0, 2.0])),
            Err(Error::Undefined(_))
        ));
    }

    #[test]
    fn skill_score_examples() {
        assert_eq!(skill_score(0.0, 3.0).unwrap(), 1.0);
        assert_eq!(skill_score(3.0, 3.0).unwrap(), 0.0);
        assert!(matches!(skill_score(1.0, 0.0), Err(Error::Undefined(_))));
        let p = pair(&[0.5, 1.0, 2.5], &[0.0, 2.0, 3.0]);
        let clim = pair(&[5.0 / 3.0; 3], &[0.0, 2.0, 3.0]);
        assert_relative_eq!(
            skill_score(mse(&p), mse(&clim)).unwrap(),
            nse(&p).unwrap(),
            epsilon = 1e-14
        );
    }

    #[test]
    fn l_w_examples() {
        assert_eq!(l_w(&pair(&[0.0, 2.0], &[0.0, 2.0])).unwrap(), 0.0);
        assert_eq!(l_w(&pair(&[1.0, 1.0], &[0.0, 2.0])).unwrap(), 1.0);
        assert_relative_eq!(
            l_w(&pair(&[0.0, 1.0], &[0.0, 2.0])).unwrap(),
            0.2,
            epsilon = 1e-15
        );
        assert!(matches!(
            l_w(&pair(&[3.0, 3.0], &[3.0, 3.0])),
            Err(Error::Undefined(_))
        ));
    }

    #[test]
    fn l_nr2_examples() {
        assert_eq!(l_nr2(&pair(&[0.0, 2.0], &[0.0, 2.0])).unwrap(), 0.0);
        assert_eq!(l_nr2(&pair(&[1.0, 1.0], &[0.0, 2.0])).unwrap(), 1.0);
        let expected = 1.0 / (1.0 + 2.0_f64.sqrt()).powi(2);
        assert_relative_eq!(
            l_nr2(&pair(&[0.0, 1.0], &[0.0, 2.0])).unwrap(),
            expected,
            epsilon = 1e-15
        );
        assert!(l_nr2(&pair(&[3.0, 3.0], &[3.0, 3.0])).is_err());
    }

    #[test]
    fn l_nr2_exact_one_cases() {
        // constant y, z != y
        assert_relative_eq!(
            l_nr2(&pair(&[1.0, 5.0, -2.0], &[2.0, 2.0, 2.0])).unwrap(),
            1.0,
            epsilon = 1e-12
        );
        // z = 1μ(y)
        assert_relative_eq!(
            l_nr2(&pair(&[2.0, 2.0, 2.0], &[1.0, 2.0, 3.0])).unwrap(),
            1.0,
            epsilon = 1e-12
        );
        // z − 1μ = a(1μ − y), a > 0
        let y = [0.5, 3.0, -1.25, 7.0];
        let m = RealVector::new(y.to_vec()).unwrap().mean();
        let z: Vec<f64> = y.iter().map(|v| m + 2.5 * (m - v)).collect();
        assert_relative_eq!(l_nr2(&pair(&z, &y)).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn l_lmc_examples() {
        let y = [0.0, 2.0, 7.0];
        assert_eq!(l_lmc_mean(&pair(&y, &y)).unwrap(), 0.0);
        assert_relative_eq!(
            l_lmc(&pair(&[0.0, 1.0], &[0.0, 2.0]), 1.0).unwrap(),
            1.0 / 3.0,
            epsilon = 1e-15
        );
        assert!(matches!(
            l_lmc(&pair(&[1.0, 1.0], &[1.0, 1.0]), 1.0),
            Err(Error::Undefined(_))
        ));
        let p = pair(&[0.4, 3.0, 1.0, -2.0, 9.0], &[1.0, 2.0, 2.5, 0.0, 4.0]);
        assert_relative_eq!(
            l_lmc_median(&p).unwrap(),
            l_nrp(&p, 1.0).unwrap(),
            epsilon = 1e-14
        );
    }

    #[test]
    fn l_kbb_examples() {
        let p = pair(&[0.0, 1.0], &[0.0, 2.0]);
        assert_eq!(l_kbb(&p, 2.0).unwrap(), l_w(&p).unwrap());
        assert_relative_eq!(l_kbb(&p, 1.0).unwrap(), 1.0 / 3.0, epsilon = 1e-15);
        for q in [1.0, 1.5, 3.0, f64::INFINITY] {
            assert_eq!(l_kbb(&pair(&[0.0, 2.0], &[0.0, 2.0]), q).unwrap(), 0.0);
        }
        assert!(l_kbb(&p, 0.5).is_err());
    }

    #[test]
    fn l_nrp_examples() {
        let p = pair(&[0.0, 1.0], &[0.0, 2.0]);
        assert_relative_eq!(l_nrp(&p, 2.0).unwrap(), l_nr2(&p).unwrap(), epsilon = 1e-15);
        assert_relative_eq!(l_nrp(&p, 1.0).unwrap(), 1.0 / 3.0, epsilon = 1e-15);
        for q in [1.0, 1.5, 3.0, f64::INFINITY] {
            assert_eq!(l_nrp(&pair(&[0.0, 2.0], &[0.0, 2.0]), q).unwrap(), 0.0);
        }
        // p = ∞: ‖(0,−1)‖∞ / (‖z−1‖∞ + ‖1−y‖∞) = 1 / (1 + 1)
        assert_relative_eq!(l_nrp(&p, f64::INFINITY).unwrap(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn identification_examples() {
        assert_eq!(v_mean_avg(&pair(&[1.0, 2.0], &[1.0, 2.0])), 0.0);
        assert_eq!(v_mean_avg(&pair(&[2.0, 1.0], &[1.0, 2.0])), 0.0);
        assert_eq!(v_mean_avg(&pair(&[1.0, 1.0], &[0.0, 2.0])), 0.0);
        assert_eq!(v_median_avg(&pair(&[5.0, 6.0], &[1.0, 2.0])), 0.5);
        assert_eq!(v_median_avg(&pair(&[-5.0, -6.0], &[1.0, 2.0])), -0.5);
        assert_eq!(v_median_avg(&pair(&[5.0, -6.0], &[1.0, 2.0])), 0.0);
    }

    #[test]
    fn metric_names_round_trip() {
        for name in [
            "mae",
            "mse",
            "nse",
            "one_minus_nse",
            "lw",
            "lnr2",
            "lmc:f=mean",
            "lmc:f=median",
            "kbb:p=3",
            "nrp:p=1.5",
            "nrp:p=inf",
            "vbar_mean",
            "vbar_median",
        ] {
            let m: Metric = name.parse().unwrap();
            assert_eq!(m.to_string(), name);
        }
        assert!("kbb:p=0.2".parse::<Metric>().is_err());
        assert!("rmse".parse::<Metric>().is_err());
    }

    #[test]
    fn report_records_undefined_and_rejects_duplicates() {
        let p = pair(&[1.0, 2.0], &[3.0, 3.0]);
        let report = MetricReport::evaluate(&p, &[Metric::Mse, Metric::Nse], false).unwrap();
        assert_eq!(report.get("mse").unwrap().value, Some(2.5));
        assert_eq!(report.get("nse").unwrap().value, None);
        assert!(report.has_undefined());
        assert!(MetricReport::evaluate(&p, &[Metric::Mse, Metric::Mse], false).is_err());
    }

    #[test]
    fn as_index_flips_agreement_entries() {
        let p = pair(&[0.0, 1.0], &[0.0, 2.0]);
        let report = MetricReport::evaluate(&p, &[Metric::Lw, Metric::Mse], true).unwrap();
        let d = report.get("1-lw").unwrap();
        assert_relative_eq!(d.value.unwrap(), 0.8, epsilon = 1e-15);
        assert_eq!(d.orientation, Orientation::Positive);
        assert_eq!(
            report.get("mse").unwrap().orientation,
            Orientation::Negative
        );
    }
}
