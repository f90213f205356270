use thiserror::Error;

/// Errors raised by the algebra kernel and the classification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("element {element} is not invertible ({witness})")]
    NotInvertible { element: String, witness: String },
    #[error("characteristic 2 is not supported: {0}")]
    CharacteristicTwo(String),
    #[error("invalid modulus {0}: prime fields need an odd prime")]
    InvalidModulus(u64),
    #[error("invalid structure constants: {0}")]
    InvalidStructure(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid involution: {0}")]
    InvalidInvolution(String),
    #[error("{0} does not have norm one")]
    NotNormOne(String),
    #[error("fixed subring is not a field: {0}")]
    FixedRingNotField(String),
    #[error("no r with r + r^lambda invertible: residue characteristic is 2")]
    CharacteristicTwoObstruction,
    #[error("matrix is not hermitian: entry ({row}, {col}) violates h^(lambda tr) = eps h")]
    NotHermitian { row: usize, col: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("alternating form of odd dimension {0} cannot be invertible")]
    OddDimensionAlternating(usize),
    #[error("automorphism is not inner: {0}")]
    NotInner(String),
    #[error("invalid Gram matrix: {0}")]
    InvalidGram(String),
    #[error("{0} is not a ramification point")]
    NotRamificationPoint(String),
    #[error("dimension anomaly: fixed space of dimension {dim} for degree {n}")]
    DimensionAnomaly { n: usize, dim: usize },
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
