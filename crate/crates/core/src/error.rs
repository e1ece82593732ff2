use thiserror::Error;

/// Errors reported by spectral construction, transfer, and analysis routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("grid count must be an odd integer >= 3, got {0}")]
    InvalidGridCount(usize),

    #[error("grid span must be positive and finite, got {0}")]
    InvalidGridSpan(f64),

    #[error("width parameter must be positive and finite, got {0}")]
    InvalidWidth(f64),

    #[error("length scale must be positive and finite, got {0}")]
    InvalidLengthScale(f64),

    #[error("{what} must use the same grid (left: {left}, right: {right})")]
    GridMismatch {
        what: &'static str,
        left: String,
        right: String,
    },

    #[error("spectrum length {values} does not match grid count {grid}")]
    LengthMismatch { values: usize, grid: usize },

    #[error("spectrum has no integrable mass (integral = {0})")]
    ZeroMass(f64),

    #[error("amplitude must be real and nonnegative; sample {index} is {value}")]
    NotRealNonnegative { index: usize, value: String },

    #[error("intensity must be nonnegative; sample {index} is {value}")]
    NegativeIntensity { index: usize, value: f64 },

    #[error("realization count must be at least {min}, got {got}")]
    TooFewRealizations { min: usize, got: usize },

    #[error("pump spectrum does not overlap the sum-frequency range [{lo}, {hi}]")]
    PumpOutOfRange { lo: f64, hi: f64 },

    #[error("joint amplitude has no mass after pump and phase-matching weighting")]
    EmptyJointAmplitude,

    #[error("operation requires a square joint grid (signal and idler grids equal)")]
    NonSquareJointGrid,

    #[error(
        "coincidence probability {value} at delay {delay} lies outside [0, 1] \
         beyond quadrature noise; joint amplitude is not normalized"
    )]
    ProbabilityOutOfRange { value: f64, delay: f64 },

    #[error("delay window too narrow: dip minimum sits at a window endpoint")]
    DipAtWindowEdge,

    #[error("delay grid must contain at least {min} strictly increasing points")]
    BadDelayGrid { min: usize },

    #[error("{path}:{line}: {msg}")]
    CsvParse {
        path: String,
        line: usize,
        msg: String,
    },

    #[error("manifest hash mismatch for {path}: recorded {recorded}, actual {actual}")]
    HashMismatch {
        path: String,
        recorded: String,
        actual: String,
    },

    #[error("{0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
