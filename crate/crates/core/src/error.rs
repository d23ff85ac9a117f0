use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid modulus {0}: expected 0 (exact) or 2 <= m < 2^31")]
    InvalidModulus(u64),
    #[error("coefficient ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("constant term is not a unit in the coefficient ring")]
    NonUnitConstant,
    #[error("invalid eta quotient: {0}")]
    InvalidEtaQuotient(String),
    #[error("invalid regularity profile: {0}")]
    InvalidProfile(String),
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("index {index} out of range for {what}")]
    OutOfRange { what: String, index: i64 },
    #[error("invalid Newman parameters r={r}, p={p}: {reason}")]
    InvalidNewman { r: u32, p: u64, reason: String },
    #[error("prime {p} violates the precondition of {what}")]
    PrimePrecondition { p: u64, what: String },
    #[error("expression error: {0}")]
    Expr(String),
    #[error("family {family}: {reason}")]
    Family { family: String, reason: String },
    #[error("unknown check or family: {0}")]
    Unknown(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
