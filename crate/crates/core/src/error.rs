use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input is empty")]
    EmptyInput,
    #[error("non-digit character {found:?} at position {position}")]
    NonDigitCharacter { position: usize, found: char },
    #[error("digit value {0} is outside 0..=9")]
    DigitOutOfRange(u8),
    #[error("ISBN check value {0} is outside 0..=10")]
    IsbnCheckOutOfRange(u8),
    #[error("wrong length: expected {expected}, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("{len} digits do not fit in a 128-bit number")]
    NumberTooLarge { len: usize },
    #[error("non-binary character {found:?} at position {position}")]
    NonBitCharacter { position: usize, found: char },
    #[error("bit length {0} is not a positive multiple of 5 covering at least two blocks")]
    BadLength(usize),
    #[error("block {block} is not a valid codeword")]
    InvalidCodeword { block: usize },
    #[error("checksum mismatch: digit total {total} is not a multiple of 10")]
    ChecksumMismatch { total: u32 },
    #[error("domain of {size} values exceeds enumeration cap {cap}")]
    DomainTooLarge { size: u128, cap: u128 },
    #[error("invalid type definition: {0}")]
    InvalidType(String),
    #[error("predicate failed on {env}: {message}")]
    PredicateFailure { env: String, message: String },
    #[error("unknown scheme {0:?}")]
    UnknownScheme(String),
    #[error("unknown property {0:?}")]
    UnknownProperty(String),
}

impl Error {
    /// Variant name, used in line-oriented reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EmptyInput => "EmptyInput",
            Error::NonDigitCharacter { .. } => "NonDigitCharacter",
            Error::DigitOutOfRange(_) => "DigitOutOfRange",
            Error::IsbnCheckOutOfRange(_) => "IsbnCheckOutOfRange",
            Error::WrongLength { .. } => "WrongLength",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::NumberTooLarge { .. } => "NumberTooLarge",
            Error::NonBitCharacter { .. } => "NonBitCharacter",
            Error::BadLength(_) => "BadLength",
            Error::InvalidCodeword { .. } => "InvalidCodeword",
            Error::ChecksumMismatch { .. } => "ChecksumMismatch",
            Error::DomainTooLarge { .. } => "DomainTooLarge",
            Error::InvalidType(_) => "InvalidType",
            Error::PredicateFailure { .. } => "PredicateFailure",
            Error::UnknownScheme(_) => "UnknownScheme",
            Error::UnknownProperty(_) => "UnknownProperty",
        }
    }
}
