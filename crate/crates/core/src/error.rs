use thiserror::Error;

/// Errors produced by the index, ordering, measure and risk computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("need at least 2 samples, got {0}")]
    TooFewSamples(usize),

    #[error("abscissa and ordinate lengths differ ({xs} vs {ys})")]
    LengthMismatch { xs: usize, ys: usize },

    #[error("non-finite value at index {0}")]
    NonFinite(usize),

    #[error("duplicate abscissa at index {0}")]
    DuplicateAbscissa(usize),

    #[error("abscissas not strictly increasing at index {0}")]
    NotIncreasing(usize),

    #[error("duplicate atom location at index {0}")]
    DuplicateLocation(usize),

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("empty sample")]
    EmptySample,

    /// A normalized index was requested for an object with zero total variation.
    #[error("normalized index undefined: total variation is zero")]
    UndefinedIndex,

    #[error("comparison undefined: total variation of {0} is zero")]
    UndefinedComparison(&'static str),

    #[error("degenerate weight: integral over [0,1] is {0}")]
    DegenerateWeight(f64),

    #[error("ratio undefined: integral of |g| is zero")]
    UndefinedRatio,
}

pub type Result<T> = std::result::Result<T, Error>;
