use thiserror::Error;

/// Errors raised by the arithmetic and verification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid prime {0}: expected a prime p >= 5")]
    BadPrime(u64),
    #[error("invalid precision {0}")]
    BadPrecision(u32),
    #[error("p^{prec} does not fit the 127-bit residue range for p = {p}")]
    PrecisionOverflow { p: u64, prec: u32 },
    #[error("argument is divisible by p")]
    DivisibleByP,
    #[error("argument is not congruent to 1 mod p")]
    NotPrincipalUnit,
    #[error("argument is not a unit")]
    NotUnit,
    #[error("base must be 1 mod p and not 1 mod p^2")]
    BadBase,
    #[error("value is not divisible by p^{power}")]
    InexactDivision { power: u32 },
    #[error("bad modulus d = {d}: {reason}")]
    BadD { d: u64, reason: &'static str },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("zero input")]
    ZeroInput,
    #[error("a(a-1) must be a unit mod p")]
    BadA,
    #[error("alpha must be a (p-1)-th root of unity different from 1 mod p")]
    BadAlpha,
    #[error("element does not lie in the base ring")]
    NotRational,
    #[error("comparison modulus collapsed to p^0")]
    PrecisionTooLow,
    #[error("closed form disagrees with the defining sum at group-ring index {index}")]
    ClosedFormMismatch { index: usize },
    #[error("derivative could not be certified nonzero at level {level}; increase precision")]
    NeedsHigherPrecision { level: u32 },
    #[error("character order {order} is divisible by p")]
    UnsupportedCharacter { order: u64 },
    #[error("ell must be a prime different from p")]
    BadEll,
    #[error("no admissible residue class found")]
    NotFound,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("rings or levels do not match")]
    Mismatch,
}

pub type Result<T> = std::result::Result<T, Error>;
