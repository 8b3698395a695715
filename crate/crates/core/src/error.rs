use thiserror::Error;

/// Errors raised anywhere in the scrambling pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("index out of range: {0}")]
    Range(String),
    #[error("invalid key: {0}")]
    KeyFormat(String),
    #[error("image too small: {rows}x{cols} (both sides must be at least {min})")]
    ImageTooSmall { rows: usize, cols: usize, min: usize },
    #[error("unsupported bit depth: {0}")]
    UnsupportedDepth(u32),
    #[error("corrupt permutation: {0}")]
    CorruptPermutation(String),
    #[error("size mismatch: expected {expected}, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },
    #[error("GDD undefined: both mean gray differences are zero")]
    UndefinedGdd,
    #[error("zero variance: correlation is undefined for a constant sequence")]
    ZeroVariance,
    #[error("black box is not a pure permutation on plane {plane}: probe {probe} produced {set_bits} set bits")]
    NotAPermutation { plane: usize, probe: usize, set_bits: usize },
    #[error("requested {requested} samples but only {available} are available")]
    CountTooLarge { requested: usize, available: usize },
    #[error("PNM parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("unsupported PNM maxval {0} (expected 255 or 65535)")]
    UnsupportedMaxval(u32),
}

impl Error {
    /// True for errors caused by inputs that are well-formed but outside
    /// the domain where an operation is defined.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::Domain(_)
                | Error::ImageTooSmall { .. }
                | Error::UndefinedGdd
                | Error::ZeroVariance
                | Error::CountTooLarge { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
