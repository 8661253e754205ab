use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("parameter {value} outside the parameter space of the {family} family")]
    Domain { family: &'static str, value: f64 },
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("data not compatible with the model: {0}")]
    InvalidData(String),
    #[error("prior {prior} cannot be paired with the {family} family")]
    Incompatible { family: &'static str, prior: String },
    #[error("improper posterior: {0}")]
    ImproperPosterior(String),
    #[error("cannot sample from improper distribution {0}")]
    ImproperDistribution(String),
    #[error("marginal likelihood undefined under improper prior {0}")]
    ImproperPrior(String),
    #[error("training sample does not regularize the prior: {0}")]
    ImproperIntermediate(String),
    #[error("no draws supplied")]
    EmptyDraws,
    #[error("maximum likelihood estimate on the boundary: {0}")]
    DegenerateMle(String),
    #[error("divergence is infinite over the whole search bracket")]
    AllInfinite,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
