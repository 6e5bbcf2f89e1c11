use thiserror::Error;

/// Errors produced by the library and the `legendre` binary.
#[derive(Debug, Error)]
pub enum Error {
    /// A size or range exceeds a desk-scale guard.
    #[error("capacity exceeded: {what} = {value} (limit {limit})")]
    Capacity {
        what: &'static str,
        value: u64,
        limit: u64,
    },

    /// A real argument lies outside its admissible domain.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("no primes in [{lo}, {hi}]")]
    EmptyRange { lo: u64, hi: u64 },

    /// Malformed request (exponents, points, sample sizes, ...).
    #[error("invalid input: {0}")]
    Invalid(String),

    /// An internal invariant failed to hold on computed data.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn capacity(what: &'static str, value: u64, limit: u64) -> Self {
        Error::Capacity { what, value, limit }
    }

    /// Process exit code used by the command-line driver.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_)
            | Error::NotOddPrime(_)
            | Error::EmptyRange { .. }
            | Error::Invalid(_) => 2,
            Error::Capacity { .. } => 3,
            Error::Invariant(_) | Error::Io(_) | Error::Json(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_unit_interval(name: &str, t: f64) -> Result<()> {
    if (0.0..=1.0).contains(&t) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} = {t} is outside [0, 1]")))
    }
}
