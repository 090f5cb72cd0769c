use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Argument outside `1..=NAT_MAX`.
    #[error("{0} is outside the supported range 1..=2^63-1")]
    OutOfRange(u64),
    #[error("arithmetic overflow: {0} exceeds 2^63-1")]
    Overflow(&'static str),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("A(m) is only defined for m = 1 or even m, got {0}")]
    OddArgument(u64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("primality of Fermat number F_{0} is unknown in the status table")]
    UndeterminedFermat(u32),
    #[error("sieve of {requested} entries exceeds the memory budget of {budget} entries")]
    BudgetExceeded { requested: u64, budget: u64 },
    #[error("sieve limit {limit} is too small, at least {required} is required")]
    InsufficientSieve { required: u64, limit: u64 },
    #[error("malformed input: {0}")]
    Format(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Errors caused by the arguments themselves rather than by overflow,
    /// memory or files.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::OutOfRange(_)
                | Error::NotPrime(_)
                | Error::OddArgument(_)
                | Error::Precondition(_)
                | Error::UndeterminedFermat(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
