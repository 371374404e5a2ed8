//! Constant-prediction fits `z = θ·1` under `L_W` and `L_NR2`.
//!
//! Both losses depend on θ only through `u = θ − μ(y)`, `σ(y)` and `mad(y)`:
//!
//! ```text
//! L_W(θ1, y)   = (u² + σ²) / (u² + σ² + 2|u|·mad)
//! L_NR2(θ1, y) = (u² + σ²) / (|u| + σ)²
//! ```
//!
//! Each has a kink at `u = 0` (value 1) and two symmetric global minima at
//! `θ = μ ± σ`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::losses::TrainingLoss;
use crate::stats::{sign, RealVector};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstantFitResult {
    pub theta_plus: f64,
    pub theta_minus: f64,
    pub min_loss: f64,
    pub loss: TrainingLoss,
}

impl ConstantFitResult {
    /// The minimizer above the mean, `μ + σ`.
    pub fn upper(&self) -> f64 {
        self.theta_plus
    }

    /// The minimizer below the mean, `μ − σ`.
    pub fn lower(&self) -> f64 {
        self.theta_minus
    }
}

/// First and second derivative of a constant-fit profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileDerivative {
    pub first: f64,
    pub second: f64,
}

/// Sufficient statistics of `y` for the constant-fit profiles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstantProfile {
    pub mean: f64,
    pub std: f64,
    pub mad: f64,
}

impl ConstantProfile {
    pub fn new(y: &RealVector) -> Result<Self> {
        if y.is_constant() {
            return Err(Error::undefined(
                "constant observations have no constant-fit profile",
            ));
        }
        let s = y.summary();
        Ok(ConstantProfile {
            mean: s.mean,
            std: s.std,
            mad: s.mad,
        })
    }

    pub fn lw(&self, theta: f64) -> f64 {
        let u = theta - self.mean;
        let q = u * u + self.std * self.std;
        q / (q + 2.0 * u.abs() * self.mad)
    }

    pub fn lnr2(&self, theta: f64) -> f64 {
        let u = theta - self.mean;
        let r = u.abs() + self.std;
        (u * u + self.std * self.std) / (r * r)
    }

    pub fn lw_derivative(&self, theta: f64) -> Result<ProfileDerivative> {
        let u = self.kink_guard(theta)?;
        let (s2, mad) = (self.std * self.std, self.mad);
        let w = u * u + s2 + 2.0 * u.abs() * mad;
        let first = 2.0 * mad * (u * u - s2) * sign(u) / (w * w);
        let second = 4.0 * mad * (2.0 * mad * s2 + u * (3.0 * s2 - u * u) * sign(u)) / (w * w * w);
        Ok(ProfileDerivative { first, second })
    }

    pub fn lnr2_derivative(&self, theta: f64) -> Result<ProfileDerivative> {
        let u = self.kink_guard(theta)?;
        let s = self.std;
        let r = s + u.abs();
        let first = 2.0 * s * (u - sign(u) * s) / (r * r * r);
        let second = 4.0 * s * (2.0 * s - u.abs()) / (r * r * r * r);
        Ok(ProfileDerivative { first, second })
    }

    /// One-sided slopes `(θ→μ⁻, θ→μ⁺)` of the `L_W` profile: `±2·mad/σ²`.
    pub fn lw_kink_slopes(&self) -> (f64, f64) {
        let k = 2.0 * self.mad / (self.std * self.std);
        (k, -k)
    }

    /// One-sided slopes `(θ→μ⁻, θ→μ⁺)` of the `L_NR2` profile: `±2/σ`.
    pub fn lnr2_kink_slopes(&self) -> (f64, f64) {
        let k = 2.0 / self.std;
        (k, -k)
    }

    fn kink_guard(&self, theta: f64) -> Result<f64> {
        let u = theta - self.mean;
        if u == 0.0 {
            return Err(Error::NonDifferentiable { theta });
        }
        Ok(u)
    }
}

/// Closed-form `L_W` constant fit: minima at `μ ± σ` with value `σ/(σ+mad)`.
pub fn fit_constant_lw(y: &RealVector) -> Result<ConstantFitResult> {
    let p = ConstantProfile::new(y)?;
    Ok(ConstantFitResult {
        theta_plus: p.mean + p.std,
        theta_minus: p.mean - p.std,
        min_loss: p.std / (p.std + p.mad),
        loss: TrainingLoss::Lw,
    })
}

/// Closed-form `L_NR2` constant fit: minima at `μ ± σ` with value exactly ½.
pub fn fit_constant_lnr2(y: &RealVector) -> Result<ConstantFitResult> {
    let p = ConstantProfile::new(y)?;
    Ok(ConstantFitResult {
        theta_plus: p.mean + p.std,
        theta_minus: p.mean - p.std,
        min_loss: 0.5,
        loss: TrainingLoss::Lnr2,
    })
}

pub fn lw_constant_profile(theta: f64, y: &RealVector) -> Result<f64> {
    Ok(ConstantProfile::new(y)?.lw(theta))
}

pub fn lnr2_constant_profile(theta: f64, y: &RealVector) -> Result<f64> {
    Ok(ConstantProfile::new(y)?.lnr2(theta))
}

pub fn lw_constant_derivative(theta: f64, y: &RealVector) -> Result<ProfileDerivative> {
    ConstantProfile::new(y)?.lw_derivative(theta)
}

pub fn lnr2_constant_derivative(theta: f64, y: &RealVector) -> Result<ProfileDerivative> {
    ConstantProfile::new(y)?.lnr2_derivative(theta)
}
