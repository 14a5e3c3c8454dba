use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("valuation of zero is undefined")]
    ZeroValuation,
    #[error("p = {0} is not a valid prime for a valuation (need p >= 2)")]
    BadPrime(u64),
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("invalid exponents: {0}")]
    InvalidExponents(String),
    #[error("bases {0}, {1}, {2} are not pairwise coprime")]
    NotCoprime(String, String, String),
    #[error("negative Q: C^Z <= A^X for a={a}, m={m}, X={big_x}, Z={big_z}")]
    NegativeQ { a: u64, m: u64, big_x: u32, big_z: u32 },
    #[error("prime {p} does not divide 2m = {two_m}")]
    PrimeNotDividing { p: u64, two_m: u64 },
    #[error("filter precondition violated: {0}")]
    FilterPrecondition(String),
    #[error("invalid linear form: {0}")]
    InvalidLinearForm(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("bound iteration did not converge for c = {0}")]
    NoConvergence(String),
    #[error("interval guard disagreement at {step}: {detail}")]
    IntervalDisagreement { step: &'static str, detail: String },
    #[error("bound cascade inconsistent at {step}: {detail}")]
    Cascade { step: &'static str, detail: String },
    #[error("invalid search box: {0}")]
    InvalidBox(String),
    #[error("y = {y} outside the searchable range [2, {cap}]")]
    InvalidY { y: u32, cap: u32 },
    #[error("work unit rejected: {0}")]
    UnitRejected(String),
    #[error("b_max must be odd and >= 3, got {0}")]
    EvenBMax(u64),
    #[error("unknown auxiliary equation id {0:?}")]
    UnknownAuxId(String),
    #[error("corrupt checkpoint {path}, line {line}: {detail}")]
    CorruptCheckpoint { path: PathBuf, line: usize, detail: String },
    #[error("reported solution {0:?} failed re-verification")]
    Unverified(Vec<u64>),
    #[error("checkpoint I/O on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("thread pool: {0}")]
    ThreadPool(String),
}
