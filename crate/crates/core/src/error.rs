use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u32),
    #[error("modulus {0:?} is not a monic irreducible polynomial of the requested degree")]
    NotIrreducible(Vec<u32>),
    #[error("no built-in modulus for p={0}, m={1}; pass one explicitly")]
    NoDefaultModulus(u32, u32),
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("symbol {symbol} is outside the alphabet of size {q}")]
    InvalidSymbol { symbol: u32, q: u32 },
    #[error("read width b={b} is outside [1, {n}]")]
    WidthOutOfRange { b: usize, n: usize },
    #[error("word lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("word alphabets differ (q={0} vs q={1})")]
    AlphabetMismatch(u32, u32),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("code index i={i} is outside [0, {n}]")]
    IndexOutOfRange { i: usize, n: usize },
    #[error("code has {size} codewords, above the enumeration cap {cap}")]
    EnumerationTooLarge { size: u128, cap: u128 },
    #[error("deg g = {degree} must be below {limit}")]
    DegreeTooLarge { degree: usize, limit: usize },
    #[error("read width b={b} exceeds {limit}")]
    WidthTooLarge { b: usize, limit: usize },
    #[error("parse error: {0}")]
    Parse(String),
}
