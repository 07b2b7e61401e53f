use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A denominator factor vanishes at the given parameter point.
    #[error("inadmissible point: factor {factor} vanishes")]
    InadmissiblePoint { factor: String },

    #[error("zero base raised to negative exponent {exponent}")]
    ZeroBaseNegativeExponent { exponent: i64 },

    #[error("series has zero constant term and cannot be inverted")]
    ZeroConstantTerm,

    /// Shifting down a series whose constant term did not cancel.
    #[error("cannot divide by z: constant term is {value}, not 0")]
    NonzeroConstantTerm { value: String },

    #[error("coefficient of z^{requested} requested but series is valid only through z^{valid}")]
    OrderExceeded { requested: usize, valid: usize },

    /// Zero constant term in the extraction recursion.
    #[error("breakdown at a_{index}: constant term of s_{series} is zero")]
    Breakdown { index: usize, series: usize },

    #[error("extracting {requested} coefficients needs input order >= {needed}, got {available}")]
    InsufficientOrder {
        requested: usize,
        needed: usize,
        available: usize,
    },

    #[error("s_(2k) builder requires k >= 1; use the explicit initial value s_0")]
    KZeroUnsupported,

    #[error("wrong specialization: {param} must be exactly 0, got {value}")]
    WrongSpecialization { param: &'static str, value: String },

    #[error("convergent denominator k_{index} has zero constant term")]
    NonInvertibleDenominator { index: usize },

    #[error("division by zero evaluating {what}")]
    DivisionByZero { what: String },

    #[error("no admissible point found after {attempts} attempts (seed {seed})")]
    SamplingExhausted { seed: u64, attempts: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub(crate) fn inadmissible(factor: impl Into<String>) -> Self {
        Error::InadmissiblePoint {
            factor: factor.into(),
        }
    }

    /// True for errors caused by the extraction recursion itself rather than bad input.
    pub fn is_breakdown(&self) -> bool {
        matches!(
            self,
            Error::Breakdown { .. }
                | Error::NonzeroConstantTerm { .. }
                | Error::NonInvertibleDenominator { .. }
                | Error::ZeroConstantTerm
        )
    }
}
