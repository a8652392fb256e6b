use alloc::string::String;

use thiserror::Error;

/// Errors raised by the fitting library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter `{name}` = {value} is outside its admissible range")]
    InvalidParameter { name: &'static str, value: f64 },

    #[error("input {0} is not finite")]
    NonFinite(f64),

    #[error("input {0} is negative")]
    Negative(f64),

    #[error("probability {0} is outside the open interval (0, 1)")]
    ProbabilityOutOfRange(f64),

    #[error("invalid mixture weights: {0}")]
    InvalidWeights(String),

    #[error("mixtures need 2 or 3 components, got {0}")]
    ComponentCount(usize),

    #[error("schema error at row {row}: {reason}")]
    Schema { row: usize, reason: String },

    #[error("sample contains no observations")]
    EmptySample,

    #[error("bin {bin} has no total amount")]
    MissingTotals { bin: usize },

    #[error("temperature must be positive and finite, got {0}")]
    InvalidTemperature(f64),

    #[error("{bins} bins cannot identify {params} free parameters")]
    DegenerateData { bins: usize, params: usize },

    #[error("parameter vector is for {found}, expected {expected}")]
    KindMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("mixture is not one of the supported model kinds")]
    UnsupportedModel,

    #[error("reference ID of the simpler model is zero")]
    ZeroReferenceId,

    #[error("fits were computed on a different dataset than the one supplied")]
    DatasetMismatch,

    #[error("need at least {needed} inputs, got {got}")]
    TooFewInputs { needed: usize, got: usize },

    #[error("input lists differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("grid of {0} points exceeds the 1e6-point limit")]
    GridTooLarge(u64),

    #[error("empty range or grid")]
    EmptyRange,

    #[error("normalized samples do not share a common support")]
    NoCommonSupport,
}

pub type Result<T> = core::result::Result<T, Error>;
