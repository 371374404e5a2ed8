//! Loss functions and extremum estimators for the index-of-agreement family.
//!
//! * [`stats`]: norms, means, dispersion and correlation of real vectors.
//! * [`losses`]: MSE, NSE, skill scores, `L_W`, `L_NR2`, `L_LMC`, `L_KBB`,
//!   `L_NRp` and the mean/median identification functions.
//! * [`estimators`]: closed-form and numerical constant and linear fits, the
//!   analytic profile derivatives, and a Nelder–Mead minimizer.
//! * [`simulate`]: a documented counter-based PRNG, samplers and the two
//!   simulation experiments.
//! * [`hydro`]: a bucket rainfall-runoff model with a calibration harness.
//!
//! ```
//! use agreeloss::losses::{l_nr2, l_w, SeriesPair};
//!
//! let pair = SeriesPair::from_vecs(vec![0.0, 1.0], vec![0.0, 2.0]).unwrap();
//! assert!((l_w(&pair).unwrap() - 0.2).abs() < 1e-15);
//! assert!(l_nr2(&pair).unwrap() < l_w(&pair).unwrap());
//! ```

pub mod error;
pub mod estimators;
pub mod hydro;
pub mod losses;
pub mod simulate;
pub mod stats;

pub use error::{Error, Result};
pub use stats::RealVector;
