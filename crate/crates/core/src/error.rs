use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the toolkit can report.
///
/// Variants fall into two families: bad input (shape, labels, file
/// contents) and numerical failure (rank loss, undefined ratios). The CLI
/// maps them to different exit codes through [`Error::is_numerical`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("RankDeficient: column {position} ({name}) lies numerically in the span of its predecessors")]
    RankDeficient { position: usize, name: String },

    #[error("SingularMatrix: {0}")]
    SingularMatrix(String),

    #[error("InvalidDf: degrees of freedom must be >= 1, got {0}")]
    InvalidDf(f64),

    #[error("InvalidProbability: {0} is outside (0, 1)")]
    InvalidProbability(f64),

    #[error("NotCentered: ridge and VIF computations need a centered design")]
    NotCentered,

    #[error("NegativeRidge: ridge constant must be >= 0, got {0}")]
    NegativeRidge(f64),

    #[error("ZeroCoefficients: OLS coefficient vector has zero norm")]
    ZeroCoefficients,

    #[error("DegenerateDirection: Q[{index},{index}] = {value:e} is below the rank tolerance")]
    DegenerateDirection { index: usize, value: f64 },

    #[error("UndefinedDelta: q_{index}ᵀβ is zero for variable {index}")]
    UndefinedDelta { index: usize },

    #[error("InvalidDelta: {0}")]
    InvalidDelta(f64),

    #[error("InvalidScenario: {0}")]
    InvalidScenario(String),

    #[error("SameSignViolation: alpha_i = {alpha:e} and beta_i = {beta:e} have opposite signs")]
    SameSignViolation { alpha: f64, beta: f64 },

    #[error("TooManyFailures: {failed} of {total} replicates failed")]
    TooManyFailures { failed: usize, total: usize },

    #[error("DimensionMismatch: {0}")]
    DimensionMismatch(String),

    #[error("InvalidDesign: {0}")]
    InvalidDesign(String),

    #[error("InvalidOrder: {0}")]
    InvalidOrder(String),

    #[error("UnknownModel: {0}")]
    UnknownModel(String),

    #[error("MissingColumn: {0}")]
    MissingColumn(String),

    #[error("NonNumericCell: row {row}, column {col}: {value:?}")]
    NonNumericCell {
        row: usize,
        col: usize,
        value: String,
    },

    #[error("MissingValue: row {row}, column {col}")]
    MissingValue { row: usize, col: usize },

    #[error("EmptyData: {0}")]
    EmptyData(String),

    #[error("ChecksumMismatch: expected {expected}, found {found}")]
    ChecksumMismatch { expected: String, found: String },

    #[error("Io: {0}")]
    Io(#[from] std::io::Error),

    #[error("Csv: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Short variant name, as printed on the diagnostic stream by the CLI.
    pub fn name(&self) -> &'static str {
        match self {
            Error::RankDeficient { .. } => "RankDeficient",
            Error::SingularMatrix(_) => "SingularMatrix",
            Error::InvalidDf(_) => "InvalidDf",
            Error::InvalidProbability(_) => "InvalidProbability",
            Error::NotCentered => "NotCentered",
            Error::NegativeRidge(_) => "NegativeRidge",
            Error::ZeroCoefficients => "ZeroCoefficients",
            Error::DegenerateDirection { .. } => "DegenerateDirection",
            Error::UndefinedDelta { .. } => "UndefinedDelta",
            Error::InvalidDelta(_) => "InvalidDelta",
            Error::InvalidScenario(_) => "InvalidScenario",
            Error::SameSignViolation { .. } => "SameSignViolation",
            Error::TooManyFailures { .. } => "TooManyFailures",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::InvalidDesign(_) => "InvalidDesign",
            Error::InvalidOrder(_) => "InvalidOrder",
            Error::UnknownModel(_) => "UnknownModel",
            Error::MissingColumn(_) => "MissingColumn",
            Error::NonNumericCell { .. } => "NonNumericCell",
            Error::MissingValue { .. } => "MissingValue",
            Error::EmptyData(_) => "EmptyData",
            Error::ChecksumMismatch { .. } => "ChecksumMismatch",
            Error::Io(_) => "Io",
            Error::Csv(_) => "Csv",
        }
    }

    /// True for failures of the numerics rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::RankDeficient { .. }
                | Error::SingularMatrix(_)
                | Error::ZeroCoefficients
                | Error::DegenerateDirection { .. }
                | Error::UndefinedDelta { .. }
                | Error::TooManyFailures { .. }
        )
    }
}
