use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("result of {base_bits}-bit base raised to {exp} would exceed the {cap}-bit cap")]
    BitCapExceeded { base_bits: u64, exp: u64, cap: u64 },

    #[error("zero has no 2-adic decomposition")]
    ZeroValuation,

    #[error("root degree must be at least 1")]
    ZeroRootDegree,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("sieve bound {bound} exceeds the limit {limit}")]
    SieveBoundTooLarge { bound: u64, limit: u64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("search bound {bound} exceeds the iteration cap {cap}")]
    SearchTooLarge { bound: String, cap: u64 },

    #[error("cofactor computations disagree for c={c}, d={d}, p={p}")]
    CofactorMismatch { c: String, d: String, p: u64 },

    #[error("witness exponent m + 1 exceeds the guard {limit}")]
    WitnessTooLarge { limit: u64 },

    #[error("{0} is not in the witness prime set")]
    PrimeNotInSet(u64),

    #[error("exhaustive search for q={q} needs {bound} iterations, above the cap {cap}")]
    ExhaustiveInfeasible { q: u64, bound: String, cap: u64 },

    #[error("structural and exhaustive evidence disagree for q={q}")]
    InconsistentEvidence { q: u64 },

    #[error("a = b = 1: the equation holds for every k when c = 2 and for none otherwise")]
    DegenerateAllOnes,

    #[error("one base above 1 and one below 1: the sum is not monotone in k")]
    NonMonotoneMixed,

    #[error("target {c} lies outside the attainable range ({lower}, inf)")]
    TargetOutOfRange { c: f64, lower: f64 },

    #[error("no convergence within {max_iter} iterations")]
    NoConvergence { max_iter: u64 },

    #[error("a = b = 1 and c = 2: every k is a solution")]
    InfiniteSolutions,

    #[error("certificate rejected: {0}")]
    CertificateRejected(String),
}
