//! Vector statistics: norms, means, deviations, centering and correlation.
//!
//! Every dispersion measure uses the population (divisor `n`) convention,
//! and all reductions go through [`sum`], a Neumaier-compensated summation.

use std::ops::Index;

use serde::Serialize;

use crate::error::{Error, Result};

/// Compensated (Neumaier) summation.
pub fn sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut total = 0.0_f64;
    let mut carry = 0.0_f64;
    for v in values {
        let t = total + v;
        if total.abs() >= v.abs() {
            carry += (total - t) + v;
        } else {
            carry += (v - t) + total;
        }
        total = t;
    }
    total + carry
}

/// A non-empty, immutable vector of finite reals.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct RealVector(Box<[f64]>);

impl RealVector {
    pub fn new(values: impl Into<Vec<f64>>) -> Result<Self> {
        let values = values.into();
        if values.is_empty() {
            return Err(Error::invalid("vector must contain at least one element"));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::invalid(format!(
                "element {i} is not finite ({})",
                values[i]
            )));
        }
        Ok(RealVector(values.into_boxed_slice()))
    }

    /// The vector `c·1` of length `n`.
    pub fn constant(c: f64, n: usize) -> Result<Self> {
        Self::new(vec![c; n])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; kept for API symmetry with slices.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.0.iter()
    }

    pub fn is_constant(&self) -> bool {
        is_constant(&self.0)
    }

    /// Sample mean `μ(x)`.
    pub fn mean(&self) -> f64 {
        mean_of(&self.0)
    }

    /// Mean absolute deviation from the mean.
    pub fn mad(&self) -> f64 {
        mad_of(&self.0)
    }

    /// Population standard deviation `σ(x)`.
    pub fn std(&self) -> f64 {
        self.variance().sqrt()
    }

    /// Population variance `σ²(x)`.
    pub fn variance(&self) -> f64 {
        variance_of(&self.0)
    }

    pub fn summary(&self) -> SummaryStats {
        let variance = self.variance();
        SummaryStats {
            mean: self.mean(),
            std: variance.sqrt(),
            variance,
            mad: self.mad(),
        }
    }

    /// `x − μ(x)·1`.
    pub fn center(&self) -> RealVector {
        let m = self.mean();
        RealVector(self.0.iter().map(|v| v - m).collect())
    }

    /// `L_p` norm for `p ≥ 1`; pass `f64::INFINITY` for the max-absolute norm.
    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        check_exponent(p)?;
        Ok(lp_norm_of(&self.0, p))
    }

    /// Euclidean inner product.
    pub fn inner(&self, other: &RealVector) -> Result<f64> {
        check_same_len(self.len(), other.len())?;
        Ok(dot(&self.0, &other.0))
    }

    /// Element-wise map, validated again for finiteness.
    pub fn map(&self, f: impl FnMut(&f64) -> f64) -> Result<RealVector> {
        RealVector::new(self.0.iter().map(f).collect::<Vec<_>>())
    }

    /// Contiguous sub-range `[start, end)`.
    pub fn slice(&self, start: usize, end: usize) -> Result<RealVector> {
        if start >= end || end > self.len() {
            return Err(Error::invalid(format!(
                "range {start}..{end} is empty or exceeds length {}",
                self.len()
            )));
        }
        Ok(RealVector(self.0[start..end].into()))
    }
}

impl Index<usize> for RealVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl AsRef<[f64]> for RealVector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for RealVector {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        RealVector::new(values)
    }
}

impl TryFrom<&[f64]> for RealVector {
    type Error = Error;

    fn try_from(values: &[f64]) -> Result<Self> {
        RealVector::new(values.to_vec())
    }
}

impl<'a> IntoIterator for &'a RealVector {
    type Item = &'a f64;
    type IntoIter = std::slice::Iter<'a, f64>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SummaryStats {
    pub mean: f64,
    pub std: f64,
    pub variance: f64,
    pub mad: f64,
}

/// Pearson correlation of two non-constant vectors of equal length.
pub fn pearson(x: &RealVector, y: &RealVector) -> Result<f64> {
    check_same_len(x.len(), y.len())?;
    if x.is_constant() || y.is_constant() {
        return Err(Error::undefined("correlation of a constant vector"));
    }
    let xc = x.center();
    let yc = y.center();
    let r = dot(&xc.0, &yc.0) / (l2_norm(&xc.0) * l2_norm(&yc.0));
    Ok(r.clamp(-1.0, 1.0))
}

/// The `L_p` mean: the minimizer over θ of `Σ|yᵢ − θ|^p`.
///
/// `p = 1` gives the median (midpoint of the central pair for even `n`),
/// `p = 2` the mean, and `p = ∞` the midrange. Other `p` are solved by
/// bisection on the monotone derivative.
pub fn lp_mean(y: &RealVector, p: f64) -> Result<f64> {
    check_exponent(p)?;
    Ok(lp_mean_of(&y.0, p))
}

/// Median with the midpoint convention for even lengths.
pub fn median(y: &RealVector) -> f64 {
    median_of(&y.0)
}

/// Scalar sign with `sign(0) = 0`.
pub fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

pub(crate) fn check_exponent(p: f64) -> Result<()> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::invalid(format!(
            "norm exponent must be >= 1, got {p}"
        )));
    }
    Ok(())
}

pub(crate) fn check_same_len(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::Dimension { left, right });
    }
    Ok(())
}

pub(crate) fn is_constant(x: &[f64]) -> bool {
    x.iter().all(|v| *v == x[0])
}

// Shifted by the first element so a constant vector reproduces its value exactly.
pub(crate) fn mean_of(x: &[f64]) -> f64 {
    let x0 = x[0];
    x0 + sum(x.iter().map(|v| v - x0)) / x.len() as f64
}

pub(crate) fn mad_of(x: &[f64]) -> f64 {
    let m = mean_of(x);
    sum(x.iter().map(|v| (v - m).abs())) / x.len() as f64
}

pub(crate) fn variance_of(x: &[f64]) -> f64 {
    let m = mean_of(x);
    (sum(x.iter().map(|v| (v - m) * (v - m))) / x.len() as f64).max(0.0)
}

pub(crate) fn dot(x: &[f64], y: &[f64]) -> f64 {
    sum(x.iter().zip(y).map(|(a, b)| a * b))
}

pub(crate) fn l2_norm(x: &[f64]) -> f64 {
    lp_norm_of(x, 2.0)
}

/// `L_p` norm; rescales by the largest magnitude so large `p` cannot overflow.
pub(crate) fn lp_norm_of(x: &[f64], p: f64) -> f64 {
    let scale = x.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()));
    if scale == 0.0 || p.is_infinite() {
        return scale;
    }
    if p == 1.0 {
        return sum(x.iter().map(|v| v.abs()));
    }
    if p == 2.0 {
        return scale * sum(x.iter().map(|v| (v / scale) * (v / scale))).sqrt();
    }
    scale * sum(x.iter().map(|v| (v.abs() / scale).powf(p))).powf(1.0 / p)
}

pub(crate) fn median_of(x: &[f64]) -> f64 {
    let mut sorted = x.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

pub(crate) fn lp_mean_of(y: &[f64], p: f64) -> f64 {
    if p == 1.0 {
        return median_of(y);
    }
    if p == 2.0 {
        return mean_of(y);
    }
    let lo = y.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = y.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if p.is_infinite() || lo == hi {
        return 0.5 * (lo + hi);
    }
    // d/dθ Σ|yᵢ−θ|^p ∝ Σ sign(θ−yᵢ)|θ−yᵢ|^(p−1); strictly increasing for p > 1.
    let range = hi - lo;
    let slope = |theta: f64| {
        sum(y.iter().map(|v| {
            let d = (theta - v) / range;
            sign(d) * d.abs().powf(p - 1.0)
        }))
    };
    let (mut a, mut b) = (lo, hi);
    while b - a > 1e-10 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        if slope(mid) > 0.0 {
            b = mid;
        } else {
            a = mid;
        }
    }
    0.5 * (a + b)
}
