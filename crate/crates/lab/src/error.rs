use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabError {
    #[error(transparent)]
    Core(#[from] invariant_core::Error),
    #[error("sampling budget exhausted: no tame composition of degree <= {cap} in {attempts} attempts")]
    SamplingBudget { cap: u32, attempts: usize },
    #[error("sampler produced jacobian {jacobian} for {map}")]
    UnsoundSample { map: String, jacobian: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, LabError>;
