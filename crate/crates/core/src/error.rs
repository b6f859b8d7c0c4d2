use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("base must be at least 2, got {0}")]
    InvalidBase(u32),

    #[error("index n must be odd, got {0}")]
    EvenIndex(u64),

    #[error("k must be at least {min}, got {got}")]
    InvalidK { min: u64, got: u64 },

    #[error("{0} requires a nonzero argument")]
    ZeroArgument(&'static str),

    #[error("{0} requires a positive argument")]
    NonPositiveArgument(&'static str),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("digit {digit:?} is not valid in base {base}")]
    InvalidDigit { digit: String, base: u32 },

    #[error("malformed numeral: {0}")]
    MalformedNumeral(String),

    #[error("block {l} is degenerate: {what} = {value}")]
    Degenerate {
        l: u64,
        what: &'static str,
        value: i64,
    },

    #[error("repeating period exceeds {limit} digits")]
    PeriodTooLong { limit: usize },

    #[error("expansion has {have} digits but {needed} are required")]
    InsufficientPrecision { needed: usize, have: usize },

    #[error("no m satisfies floor({0}/m) = 2")]
    NoValidPower(u64),

    #[error("base {base}^{power} does not fit in a digit")]
    PowerOverflow { base: u32, power: u32 },

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

impl Error {
    /// Internal-consistency failures are bugs, everything else is bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Inconsistent(_))
    }
}
