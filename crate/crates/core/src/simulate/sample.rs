use serde::Serialize;

use super::rng::RngState;
use crate::error::{Error, Result};
use crate::stats::RealVector;

/// Gaussian, gamma (scale/shape) and lognormal distributions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DistributionSpec {
    Gaussian {
        mean: f64,
        std: f64,
    },
    Gamma {
        scale: f64,
        shape: f64,
    },
    /// `exp(N(mu, sigma))`.
    Lognormal {
        mu: f64,
        sigma: f64,
    },
}

impl DistributionSpec {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            DistributionSpec::Gaussian { mean, std } => {
                mean.is_finite() && std.is_finite() && std > 0.0
            }
            DistributionSpec::Gamma { scale, shape } => {
                scale.is_finite() && shape.is_finite() && scale > 0.0 && shape > 0.0
            }
            DistributionSpec::Lognormal { mu, sigma } => {
                mu.is_finite() && sigma.is_finite() && sigma > 0.0
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "invalid distribution parameters: {self:?}"
            )))
        }
    }

    pub fn mean(&self) -> f64 {
        match *self {
            DistributionSpec::Gaussian { mean, .. } => mean,
            DistributionSpec::Gamma { scale, shape } => scale * shape,
            DistributionSpec::Lognormal { mu, sigma } => (mu + 0.5 * sigma * sigma).exp(),
        }
    }

    pub fn draw(&self, rng: &mut RngState) -> f64 {
        match *self {
            DistributionSpec::Gaussian { mean, std } => mean + std * standard_normal(rng),
            DistributionSpec::Gamma { scale, shape } => scale * standard_gamma(shape, rng),
            DistributionSpec::Lognormal { mu, sigma } => (mu + sigma * standard_normal(rng)).exp(),
        }
    }
}

/// Draws `n` independent values.
pub fn sample(spec: &DistributionSpec, n: usize, rng: &mut RngState) -> Result<RealVector> {
    spec.validate()?;
    if n == 0 {
        return Err(Error::invalid("sample size must be at least 1"));
    }
    RealVector::new((0..n).map(|_| spec.draw(rng)).collect::<Vec<_>>())
}

/// Box–Muller, cosine branch only: consumes exactly two uniforms per draw.
pub fn standard_normal(rng: &mut RngState) -> f64 {
    let u1 = rng.next_open01();
    let u2 = rng.next_open01();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Marsaglia–Tsang for unit scale. Shapes below one draw `Gamma(shape + 1)`
/// first, then one uniform `U`, and return `g · U^(1/shape)`.
pub fn standard_gamma(shape: f64, rng: &mut RngState) -> f64 {
    if shape < 1.0 {
        let g = standard_gamma(shape + 1.0, rng);
        let u = rng.next_open01();
        return g * u.powf(1.0 / shape);
    }
    let d = shape - 1.0 / 3.0;
    let c = 1.0 / (9.0 * d).sqrt();
    loop {
        let x = standard_normal(rng);
        let t = 1.0 + c * x;
        if t <= 0.0 {
            continue;
        }
        let v = t * t * t;
        let u = rng.next_open01();
        if u < 1.0 - 0.0331 * x.powi(4) || u.ln() < 0.5 * x * x + d * (1.0 - v + v.ln()) {
            return d * v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn moments(x: &RealVector) -> (f64, f64) {
        (x.mean(), x.variance())
    }

    #[test]
    fn gaussian_mean_within_clt_bound() {
        let mut rng = RngState::new(20240611, 0);
        let n = 100_000;
        let x = sample(
            &DistributionSpec::Gaussian {
                mean: 0.0,
                std: 1.0,
            },
            n,
            &mut rng,
        )
        .unwrap();
        let (m, var) = moments(&x);
        assert!(m.abs() < 3.3 / (n as f64).sqrt(), "mean {m}");
        assert!((var - 1.0).abs() < 0.02, "variance {var}");
    }

    #[test]
    fn lognormal_is_positive() {
        let mut rng = RngState::new(5, 0);
        let x = sample(
            &DistributionSpec::Lognormal {
                mu: 0.0,
                sigma: 2.0,
            },
            10_000,
            &mut rng,
        )
        .unwrap();
        assert!(x.iter().all(|v| *v > 0.0));
    }

    #[test]
    fn gamma_mean_and_variance() {
        let mut rng = RngState::new(99, 3);
        let n = 200_000;
        for (scale, shape) in [(1.8, 0.4), (0.5, 3.0), (2.0, 1.0)] {
            let x = sample(&DistributionSpec::Gamma { scale, shape }, n, &mut rng).unwrap();
            assert!(x.iter().all(|v| *v >= 0.0));
            let (m, var) = moments(&x);
            let true_var = shape * scale * scale;
            let se = (true_var / n as f64).sqrt();
            assert!(
                (m - scale * shape).abs() < 3.0 * se,
                "shape {shape}: mean {m}"
            );
            assert!(
                (var / true_var - 1.0).abs() < 0.05,
                "shape {shape}: variance {var}"
            );
        }
    }

    #[test]
    fn gamma_cdf_matches_exponential_special_case() {
        // Gamma(shape 1) is Exp(1): P(X <= 1) = 1 − e⁻¹.
        let mut rng = RngState::new(11, 0);
        let n = 100_000;
        let below = (0..n)
            .filter(|_| standard_gamma(1.0, &mut rng) <= 1.0)
            .count() as f64
            / n as f64;
        let p = 1.0 - (-1.0_f64).exp();
        assert!((below - p).abs() < 3.3 * (p * (1.0 - p) / n as f64).sqrt());
    }

    #[test]
    fn invalid_specs() {
        let mut rng = RngState::new(0, 0);
        for spec in [
            DistributionSpec::Gaussian {
                mean: 0.0,
                std: 0.0,
            },
            DistributionSpec::Gamma {
                scale: -1.0,
                shape: 1.0,
            },
            DistributionSpec::Gamma {
                scale: 1.0,
                shape: 0.0,
            },
            DistributionSpec::Lognormal {
                mu: f64::NAN,
                sigma: 1.0,
            },
        ] {
            assert!(matches!(
                sample(&spec, 3, &mut rng),
                Err(Error::InvalidInput(_))
            ));
        }
        assert!(sample(
            &DistributionSpec::Gaussian {
                mean: 0.0,
                std: 1.0
            },
            0,
            &mut rng
        )
        .is_err());
    }

    #[test]
    fn reproducible() {
        let spec = DistributionSpec::Gamma {
            scale: 1.8,
            shape: 0.4,
        };
        let a = sample(&spec, 50, &mut RngState::new(3, 4)).unwrap();
        let b = sample(&spec, 50, &mut RngState::new(3, 4)).unwrap();
        assert_eq!(a, b);
    }
}
