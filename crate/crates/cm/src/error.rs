use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("validation: {0}")]
    Validation(String),

    #[error("domain: {0}")]
    Domain(String),

    /// The truth-from-likelihood inversion is undefined when the logical
    /// probability vanishes.
    #[error("degenerate truth function: logical probability is zero")]
    DegenerateTruth,

    #[error("undefined ratio: prior is zero at class {class} where likelihood is positive")]
    UndefinedRatio { class: usize },

    #[error("degenerate sample: {0}")]
    DegenerateSample(String),

    #[error("support: {0}")]
    Support(String),

    #[error("partition has {count} boundary crossings at {coords:?}, expected exactly one")]
    MultiBoundary { count: usize, coords: Vec<f64> },

    #[error("configuration: {0}")]
    Config(String),

    #[error("unsupported dimension: {0}")]
    UnsupportedDimension(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
