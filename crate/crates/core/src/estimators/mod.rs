//! Extremum estimation under the agreement losses.
//!
//! Constant fits and the `L_NR2` linear fit have closed forms; the `L_W`
//! linear fit is found numerically with [`minimize`].

mod constant;
mod linear;
mod minimize;

pub use constant::{
    fit_constant_lnr2, fit_constant_lw, lnr2_constant_derivative, lnr2_constant_profile,
    lw_constant_derivative, lw_constant_profile, ConstantFitResult, ConstantProfile,
    ProfileDerivative,
};
pub use linear::{
    fit_linear_lnr2, fit_linear_lw, fit_linear_ols, linear_objective, FitMethod, LinearFitResult,
};
pub use minimize::{minimize, MinimizerConfig, Minimum};
