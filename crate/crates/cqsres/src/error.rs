use thiserror::Error;

/// Everything that can go wrong in the library.
///
/// Numbers are carried as text so the error type stays independent of the
/// scalar.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid fraction {delta}/{omega}: need 0 < omega < delta and gcd 1")]
    InvalidFraction { delta: String, omega: String },

    #[error("invalid Wahl singularity ({n},{a}): need 0 < a < n coprime, or (1,1)")]
    InvalidWahl { n: String, a: String },

    #[error("chain does not contract: {0}")]
    NotContractible(String),

    #[error("target mismatch: chain contracts to {found}, expected {expected}")]
    TargetMismatch { expected: String, found: String },

    #[error("non-integral invariant: {0}")]
    NonIntegral(String),

    #[error("no curve with c >= 1 between {left} and {right} has signed delta {s}")]
    NoSuchCurve { left: String, right: String, s: String },

    #[error("antiflip at curve {index} degenerates (n' = 0)")]
    Degenerate { index: usize },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("malformed resolution: {0}")]
    Malformed(String),

    #[error("construction failed for zero fraction {zero_fraction}: {reason}")]
    ConstructionFailed { zero_fraction: String, reason: String },

    #[error("hom formulas disagree at ({i},{j}): {closed} vs {sum}")]
    FormulaMismatch { i: usize, j: usize, closed: String, sum: String },

    #[error("negative arrow count at ({i},{j})")]
    NegativeArrowCount { i: usize, j: usize },

    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("invalid Dolgachev data p={p}, q={q}: need p, q >= 2 coprime and 3 not dividing q")]
    InvalidDolgachev { p: String, q: String },

    #[error("step {step} of braid word: {source}")]
    Step {
        step: usize,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
