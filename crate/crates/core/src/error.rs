use std::fmt;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid stencil half-width m = {0}; must be at least 1")]
    InvalidHalfWidth(usize),

    #[error("invalid coefficients: {0}")]
    InvalidCoefficients(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate amplification factor (|G| = 0) at phi = {phi}")]
    DegenerateAmplification { phi: f64 },

    #[error("linear solve failed: {0}")]
    Solver(String),

    #[error("infinite caustic lifetime: packet speeds are equal")]
    InfiniteLifetime,

    #[error("degenerate caustic: second derivative of the group velocity is zero")]
    DegenerateCaustic,

    #[error("domain too small: {0}")]
    DomainTooSmall(String),

    #[error("phi = {phi} is not commensurate with a periodic grid of {nx} points")]
    NonCommensurate { phi: f64, nx: usize },

    #[error("numerical instability: {0}")]
    Unstable(String),

    #[error("{0}")]
    Config(ConfigErrors),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit status used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_)
            | Error::InvalidHalfWidth(_)
            | Error::InvalidCoefficients(_)
            | Error::InvalidGrid(_)
            | Error::InvalidArgument(_)
            | Error::Domain(_)
            | Error::DomainTooSmall(_)
            | Error::NonCommensurate { .. } => 2,
            Error::Io(_) => 3,
            Error::Unstable(_)
            | Error::DegenerateAmplification { .. }
            | Error::InfiniteLifetime
            | Error::DegenerateCaustic => 4,
            Error::Solver(_) => 5,
        }
    }
}

/// One configuration problem, tied to the line it was found on (0 when the
/// problem is a missing key).
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigIssue {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ConfigIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConfigErrors(pub Vec<ConfigIssue>);

impl fmt::Display for ConfigErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} configuration error(s)", self.0.len())?;
        for issue in &self.0 {
            write!(f, "\n  {issue}")?;
        }
        Ok(())
    }
}
