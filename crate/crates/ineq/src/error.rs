use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong across the crate, split into three families:
/// input validation, mathematically undefined results, and breached internal
/// identities. The family determines the process exit code in the CLI.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input contains no records")]
    EmptyInput,
    #[error("record {index}: negative income {value}")]
    NegativeIncome { index: usize, value: f64 },
    #[error("record {index}: weight must be positive, got {value}")]
    NonPositiveWeight { index: usize, value: f64 },
    #[error("record {index}: {what} is not finite")]
    NonFiniteValue { index: usize, what: &'static str },
    #[error("group count must be at least 1")]
    InvalidGroupCount,
    #[error("undefined when the maximum income is zero")]
    UndefinedForZeroMax,
    #[error("undefined when the mean income is zero")]
    UndefinedForZeroMean,
    #[error("undefined when total income is zero")]
    UndefinedForZeroTotal,
    #[error("generalized entropy with alpha = {alpha} is undefined on zero incomes")]
    ZeroIncomeWithNonpositiveAlpha { alpha: f64 },
    #[error("inequality aversion must be positive, got {epsilon}")]
    NonPositiveEpsilon { epsilon: f64 },
    #[error("bottom decile mean is zero, ratio undefined")]
    ZeroBottomDecile,
    #[error("bottom share of income is zero, ratio undefined")]
    ZeroBottomShare,
    #[error("invalid percent cuts: top {top}%, bottom {bottom}%")]
    InvalidPercents { top: f64, bottom: f64 },
    #[error("population must have more than one element")]
    SingleElementPopulation,
    #[error("minimum income is zero, max-to-min ratio undefined")]
    ZeroMinimumIncome,
    #[error("bounds coincide, relative position undefined")]
    DegenerateEquality,
    #[error("at least {needed} records required, got {got}")]
    TooFewRecords { needed: usize, got: usize },
    #[error("group label {label:?} does not match the hierarchy depth of the rest of the input")]
    InconsistentHierarchy { label: String },
    #[error("duplicate group label {label:?}")]
    DuplicateGroupLabel { label: String },
    #[error("transfer would change the income ordering")]
    OrderBreakingTransfer,
    #[error("transfer would leave the donor with negative income")]
    NegativeResultingIncome,
    #[error("invalid transformation: {0}")]
    InvalidTransformation(String),
    #[error("unknown axiom {0:?}")]
    UnknownAxiom(String),
    #[error("unknown index {0:?}")]
    UnknownIndex(String),
    #[error("at least two replicates required, got {got}")]
    TooFewReplicates { got: u32 },
    #[error("at least one trial required")]
    NoTrials,
    #[error("index undefined on resample {replicate} after {attempts} redraws")]
    IndexUndefinedOnResample { replicate: u32, attempts: u32 },
    #[error("line {line}: {message}")]
    Dataset { line: u64, message: String },
    #[error("dataset has no group column")]
    MissingGroupColumn,
    #[error("INEQ_THREADS must be a positive integer, got {0:?}")]
    InvalidThreadCount(String),
    #[error("{what} identity breached, residual {residual:e}")]
    InvariantBreach { what: &'static str, residual: f64 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Exit code contract: 2 for rejected input, 3 for values that are
    /// mathematically undefined on the given data, 4 for a breached internal
    /// identity (which indicates a bug, not bad input).
    pub fn exit_code(&self) -> i32 {
        use Error::*;
        match self {
            UndefinedForZeroMax
            | UndefinedForZeroMean
            | UndefinedForZeroTotal
            | ZeroIncomeWithNonpositiveAlpha { .. }
            | ZeroBottomDecile
            | ZeroBottomShare
            | ZeroMinimumIncome
            | DegenerateEquality
            | SingleElementPopulation
            | IndexUndefinedOnResample { .. } => 3,
            InvariantBreach { .. } => 4,
            _ => 2,
        }
    }
}
