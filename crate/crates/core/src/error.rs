use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("modulus must be nonzero")]
    ZeroModulus,
    #[error("{divisor} does not divide {modulus}")]
    NotADivisor { divisor: i64, modulus: i64 },
    #[error("{0} has a prime factor that does not divide the modulus")]
    ForeignPrime(i64),
    #[error("residue is not divisible by {0}")]
    NotDivisible(i64),
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(i64, i64),
    #[error("precision levels differ: {0} vs {1}")]
    PrecisionMismatch(u32, u32),
    #[error("Z_m is the zero ring for |m| = 1")]
    ZeroRing,
    #[error("insufficient precision: need {needed}, have {available}")]
    InsufficientPrecision { needed: u32, available: u32 },
    #[error("insufficient level: word needs level {needed}, context has {available}")]
    InsufficientLevel { needed: u32, available: u32 },
    #[error("{0} is not in the congruence class of the context")]
    NotInClass(String),
    #[error("scale is not a unit of the coefficient ring")]
    NonUnit,
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

impl Error {
    pub(crate) fn syntax(position: usize, message: &str) -> Self {
        Error::Syntax {
            position,
            message: message.into(),
        }
    }
}
