use std::fmt;

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    Input = 1,
    Undefined = 2,
    Convergence = 3,
}

#[derive(Debug)]
pub enum CliError {
    /// Malformed or unreadable input, bad flag values, invalid spans.
    Input(String),
    Core(agreeloss::Error),
}

impl CliError {
    pub fn exit(&self) -> Exit {
        match self {
            CliError::Input(_) => Exit::Input,
            CliError::Core(e) if e.is_undefined() => Exit::Undefined,
            CliError::Core(agreeloss::Error::Convergence { .. }) => Exit::Convergence,
            CliError::Core(_) => Exit::Input,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => f.write_str(msg),
            CliError::Core(e) => e.fmt(f),
        }
    }
}

impl From<agreeloss::Error> for CliError {
    fn from(e: agreeloss::Error) -> Self {
        CliError::Core(e)
    }
}
