use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("negative exponent at position {pos}")]
    NegativeExponent { pos: usize },
    #[error("unknown variable '{name}' at position {pos} (only x and y are allowed)")]
    UnknownVariable { pos: usize, name: String },
    #[error("exponent at position {pos} exceeds the supported maximum {max}")]
    ExponentTooLarge { pos: usize, max: u32 },
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("constant polynomial: the criterion needs a nonconstant input")]
    ConstantPolynomial,
    #[error("polynomials live over different prime fields")]
    ModulusMismatch,
    #[error("{0} is not prime")]
    NotPrime(BigInt),
    #[error("every coefficient is divisible by {0}")]
    ZeroReduction(BigInt),
    #[error("criterion matrix needs x- and y-degree at least 1, got ({m}, {n})")]
    DegreeTooSmall { m: usize, n: usize },
    #[error("matrix has rank {rank}, below the requested {target}")]
    RankDeficient { rank: usize, target: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("expected a vector of length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("witness degree bound violated: {0}")]
    DegreeBound(String),
    #[error("witness construction degenerated to (0, 0); the factor is inseparable or a p-th power")]
    DegenerateWitness,
    #[error("{a} is not invertible modulo {p}")]
    NotInvertible { a: BigInt, p: BigInt },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("polynomial is reducible over the rationals; bad primes are undefined")]
    ReducibleInput,
    #[error("search scope exceeded: {0}")]
    ScopeGuard(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// True for failures that indicate a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}
