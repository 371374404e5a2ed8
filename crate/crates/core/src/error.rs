use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: {left} vs {right}")]
    Dimension { left: usize, right: usize },

    /// The requested quantity has no mathematical value for these inputs
    /// (constant reference, zero denominator, undefined correlation).
    #[error("undefined: {0}")]
    Undefined(String),

    #[error("derivative undefined at theta = {theta}: the profile has a kink at the sample mean")]
    NonDifferentiable { theta: f64 },

    #[error("singular design: {0}")]
    SingularDesign(String),

    #[error("minimizer did not converge within {iterations} iterations (best value {value})")]
    Convergence {
        point: Vec<f64>,
        value: f64,
        iterations: usize,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn undefined(msg: impl Into<String>) -> Self {
        Error::Undefined(msg.into())
    }

    /// True for errors that signal a mathematically undefined request rather
    /// than malformed input.
    pub fn is_undefined(&self) -> bool {
        matches!(
            self,
            Error::Undefined(_) | Error::NonDifferentiable { .. } | Error::SingularDesign(_)
        )
    }
}
