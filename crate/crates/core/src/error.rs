use thiserror::Error;

/// Errors raised by the polynomial constructors, the ternary engine and the analyzer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter set is empty")]
    EmptyParameterSet,

    #[error("parameter {value} must be at least {min}")]
    ParameterTooSmall { value: u64, min: u64 },

    #[error("parameters {a} and {b} are not coprime: gcd({a}, {b}) = {gcd}")]
    NotCoprime { a: u64, b: u64, gcd: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what} = {value} is outside the admissible range {range}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        range: String,
    },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("degree {degree} exceeds the configured cap of {cap} coefficients; use the ternary stream path for large inputs")]
    DegreeCapExceeded { degree: u64, cap: u64 },

    #[error("division by (z^{n} - 1) left a nonzero remainder")]
    NonzeroRemainder { n: usize },

    #[error("internal consistency failure: {0}")]
    Inconsistency(String),
}

impl Error {
    /// Input validation failures (bad parameters or arguments).
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::EmptyParameterSet
                | Error::ParameterTooSmall { .. }
                | Error::NotCoprime { .. }
                | Error::InvalidArgument(_)
                | Error::OutOfRange { .. }
        )
    }

    /// Capacity failures: arithmetic overflow or the degree cap.
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Overflow(_) | Error::DegreeCapExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
