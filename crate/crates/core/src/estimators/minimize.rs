//! Derivative-free Nelder–Mead simplex minimizer with restarts.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MinimizerConfig {
    pub max_iterations: usize,
    /// Simplex diameter tolerance, relative to `max(1, ‖x_best‖∞)`.
    pub x_tolerance: f64,
    /// Spread of simplex values, relative to `max(1, |f_best|)`.
    pub f_tolerance: f64,
    /// Initial edge length as a fraction of each coordinate's magnitude.
    pub initial_simplex_scale: f64,
    /// Additional runs started from a fresh simplex around the best point.
    pub restarts: usize,
}

impl Default for MinimizerConfig {
    fn default() -> Self {
        MinimizerConfig {
            max_iterations: 10_000,
            x_tolerance: 1e-10,
            f_tolerance: 1e-10,
            initial_simplex_scale: 0.1,
            restarts: 2,
        }
    }
}

impl MinimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0 {
            return Err(Error::invalid("max_iterations must be at least 1"));
        }
        if self.x_tolerance.is_nan()
            || self.f_tolerance.is_nan()
            || self.x_tolerance <= 0.0
            || self.f_tolerance <= 0.0
        {
            return Err(Error::invalid("tolerances must be positive"));
        }
        if !self.initial_simplex_scale.is_finite() || self.initial_simplex_scale <= 0.0 {
            return Err(Error::invalid(
                "initial_simplex_scale must be positive and finite",
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Minimum {
    pub point: Vec<f64>,
    pub value: f64,
    /// Simplex iterations summed over all runs.
    pub iterations: usize,
    pub evaluations: usize,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

struct Counted<F> {
    f: F,
    evaluations: usize,
}

impl<F: FnMut(&[f64]) -> f64> Counted<F> {
    fn eval(&mut self, x: &[f64]) -> f64 {
        self.evaluations += 1;
        let v = (self.f)(x);
        // Non-finite values are treated as an infinitely bad point.
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    }
}

/// Minimizes `objective` starting from `start`.
///
/// Deterministic for identical inputs. Each run stops when both the simplex
/// diameter and the spread of its values fall under the configured
/// tolerances; exceeding `max_iterations` in any run is a
/// [`Error::Convergence`] carrying the best iterate found so far.
pub fn minimize<F>(objective: F, start: &[f64], config: &MinimizerConfig) -> Result<Minimum>
where
    F: FnMut(&[f64]) -> f64,
{
    config.validate()?;
    if start.is_empty() {
        return Err(Error::invalid(
            "start point must have at least one coordinate",
        ));
    }
    let mut f = Counted {
        f: objective,
        evaluations: 0,
    };
    let f0 = f.eval(start);
    if !f0.is_finite() {
        return Err(Error::invalid(format!(
            "objective is not finite at the start point ({f0})"
        )));
    }

    let mut best = (start.to_vec(), f0);
    let mut iterations = 0;
    for _ in 0..=config.restarts {
        let run = nelder_mead(&mut f, &best.0, best.1, config);
        iterations += run.iterations;
        if run.value <= best.1 {
            best = (run.point, run.value);
        }
        if !run.converged {
            return Err(Error::Convergence {
                point: best.0,
                value: best.1,
                iterations,
            });
        }
    }
    Ok(Minimum {
        point: best.0,
        value: best.1,
        iterations,
        evaluations: f.evaluations,
    })
}

struct Run {
    point: Vec<f64>,
    value: f64,
    iterations: usize,
    converged: bool,
}

fn nelder_mead<F: FnMut(&[f64]) -> f64>(
    f: &mut Counted<F>,
    start: &[f64],
    f_start: f64,
    config: &MinimizerConfig,
) -> Run {
    let dim = start.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    simplex.push((start.to_vec(), f_start));
    for i in 0..dim {
        let mut x = start.to_vec();
        let step = if x[i].abs() > 1e-12 {
            config.initial_simplex_scale * x[i].abs()
        } else {
            config.initial_simplex_scale
        };
        x[i] += step;
        let fx = f.eval(&x);
        simplex.push((x, fx));
    }

    let mut iterations = 0;
    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        if has_converged(&simplex, config) {
            let (point, value) = simplex.swap_remove(0);
            return Run {
                point,
                value,
                iterations,
                converged: true,
            };
        }
        if iterations >= config.max_iterations {
            let (point, value) = simplex.swap_remove(0);
            return Run {
                point,
                value,
                iterations,
                converged: false,
            };
        }
        iterations += 1;

        let worst = dim;
        let mut centroid = vec![0.0; dim];
        for (x, _) in &simplex[..worst] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / dim as f64;
            }
        }
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[worst].0)
                .map(|(c, w)| c + t * (c - w))
                .collect()
        };

        let reflected = along(REFLECT);
        let f_reflected = f.eval(&reflected);
        if f_reflected < simplex[0].1 {
            let expanded = along(REFLECT * EXPAND);
            let f_expanded = f.eval(&expanded);
            simplex[worst] = if f_expanded < f_reflected {
                (expanded, f_expanded)
            } else {
                (reflected, f_reflected)
            };
            continue;
        }
        if f_reflected < simplex[worst - 1].1 {
            simplex[worst] = (reflected, f_reflected);
            continue;
        }
        let (contracted, f_contracted) = if f_reflected < simplex[worst].1 {
            let x = along(REFLECT * CONTRACT);
            let fx = f.eval(&x);
            (x, fx)
        } else {
            let x = along(-CONTRACT);
            let fx = f.eval(&x);
            (x, fx)
        };
        if f_contracted < simplex[worst].1.min(f_reflected) {
            simplex[worst] = (contracted, f_contracted);
            continue;
        }
        let best = simplex[0].0.clone();
        for (x, fx) in simplex.iter_mut().skip(1) {
            for (xi, bi) in x.iter_mut().zip(&best) {
                *xi = bi + SHRINK * (*xi - bi);
            }
            *fx = f.eval(x);
        }
    }
}

fn has_converged(simplex: &[(Vec<f64>, f64)], config: &MinimizerConfig) -> bool {
    let (best, f_best) = (&simplex[0].0, simplex[0].1);
    if !f_best.is_finite() {
        return false;
    }
    let f_spread = simplex
        .iter()
        .map(|(_, fx)| (fx - f_best).abs())
        .fold(0.0_f64, f64::max);
    let x_scale = best.iter().fold(1.0_f64, |acc, v| acc.max(v.abs()));
    let x_spread = simplex
        .iter()
        .flat_map(|(x, _)| x.iter().zip(best).map(|(a, b)| (a - b).abs()))
        .fold(0.0_f64, f64::max);
    f_spread <= config.f_tolerance * f_best.abs().max(1.0)
        && x_spread <= config.x_tolerance * x_scale
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_bowl() {
        let m = minimize(
            |p| (p[0] - 3.0).powi(2) + (p[1] + 1.0).powi(2),
            &[0.0, 0.0],
            &MinimizerConfig::default(),
        )
        .unwrap();
        assert!((m.point[0] - 3.0).abs() < 1e-6 && (m.point[1] + 1.0).abs() < 1e-6);
        assert!(m.value < 1e-12);
    }

    #[test]
    fn rosenbrock() {
        let m = minimize(
            |p| 100.0 * (p[1] - p[0] * p[0]).powi(2) + (1.0 - p[0]).powi(2),
            &[-1.2, 1.0],
            &MinimizerConfig::default(),
        )
        .unwrap();
        assert!((m.point[0] - 1.0).abs() < 1e-6 && (m.point[1] - 1.0).abs() < 1e-6);
    }

    #[test]
    fn one_dimensional_kink() {
        let m = minimize(|p| (p[0] - 0.25).abs(), &[4.0], &MinimizerConfig::default()).unwrap();
        assert!((m.point[0] - 0.25).abs() < 1e-8);
    }

    #[test]
    fn deterministic() {
        let f = |p: &[f64]| (p[0] - 1.0).powi(4) + p[1].abs() + (p[2] * p[0]).sin();
        let cfg = MinimizerConfig::default();
        assert_eq!(
            minimize(f, &[0.3, 0.2, 0.1], &cfg).unwrap(),
            minimize(f, &[0.3, 0.2, 0.1], &cfg).unwrap()
        );
    }

    #[test]
    fn non_finite_start_is_rejected() {
        let r = minimize(|_| f64::NAN, &[1.0], &MinimizerConfig::default());
        assert!(matches!(r, Err(Error::InvalidInput(_))));
        let r = minimize(|_| f64::INFINITY, &[1.0], &MinimizerConfig::default());
        assert!(matches!(r, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn exhausted_budget_reports_best_iterate() {
        let cfg = MinimizerConfig {
            max_iterations: 3,
            ..MinimizerConfig::default()
        };
        match minimize(|p| (p[0] - 10.0).powi(2) + p[1] * p[1], &[0.0, 1.0], &cfg) {
            Err(Error::Convergence { point, value, .. }) => {
                assert_eq!(point.len(), 2);
                assert!(value < 101.0);
            }
            other => panic!("expected convergence error, got {other:?}"),
        }
    }

    #[test]
    fn invalid_config() {
        let cfg = MinimizerConfig {
            x_tolerance: 0.0,
            ..MinimizerConfig::default()
        };
        assert!(minimize(|p| p[0] * p[0], &[1.0], &cfg).is_err());
    }
}
