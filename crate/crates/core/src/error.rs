use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("deck size {0} is below the minimum of 4")]
    DeckTooSmall(usize),
    #[error("invalid configuration entry {value} at position {position} (expected 0 or 1)")]
    InvalidOccupancy { position: usize, value: u8 },
    #[error("card list is not a permutation of 1..={0}")]
    NotAPermutation(usize),
    #[error("rate {name} = {value} outside [0, 1]")]
    RateOutOfRange { name: &'static str, value: f64 },
    #[error("degenerate chain: total jump rate is zero")]
    DegenerateChain,
    #[error("no insertion move (top-to-penultimate, top-to-bottom, bottom-to-top) has positive rate")]
    NoInsertionMove,
    #[error("time scale exponent must be 1 or 2, got {0}")]
    InvalidBeta(u32),
    #[error("profile value {value} at u = {u} outside [0, 1]")]
    ProfileOutOfRange { u: f64, value: f64 },
    #[error("particle count {count} outside [0, {n}]")]
    ParticleCountOutOfRange { count: usize, n: usize },
    #[error("density {0} outside [0, 1]")]
    DensityOutOfRange(f64),
    #[error("observation times must be sorted and lie in [{start}, {end}]")]
    InvalidObservationTimes { start: f64, end: f64 },
    #[error("state space for n = {0} exceeds the exact-oracle limit n <= 12")]
    OracleTooLarge(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("negative density value {value} at state {state} under a square root")]
    NegativeDensity { state: usize, value: f64 },
    #[error(
        "uniformization stopped after {terms} terms with truncation bound {bound:e} above tolerance {tolerance:e}"
    )]
    UniformizationStalled { terms: usize, bound: f64, tolerance: f64 },
    #[error("Sobolev index must be positive, got {0}")]
    NonPositiveSobolevIndex(f64),
    #[error("mode cutoff {cutoff} too large for n = {n} (need 4K <= n)")]
    CutoffTooLarge { cutoff: usize, n: usize },
    #[error("at least two replicas are required, got {0}")]
    TooFewReplicas(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
