use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
#[non_exhaustive]
pub enum Error {
    #[error("series too short: {what} needs at least {needed} observations, got {got}")]
    TooShort {
        what: &'static str,
        needed: usize,
        got: usize,
    },
    #[error("price at position {index} is not strictly positive ({value})")]
    NonPositivePrice { index: usize, value: f64 },
    #[error("value at position {index} is not finite")]
    NonFinite { index: usize },
    #[error("labels length {labels} does not match values length {values}")]
    LabelMismatch { labels: usize, values: usize },
    #[error("series has zero dispersion; moments beyond the mean are undefined")]
    DegenerateSeries,
    #[error("regression design matrix is rank-deficient")]
    SingularDesign,
    #[error("autoregressive order {order} is not smaller than series length {len}")]
    OrderTooLarge { order: usize, len: usize },
    #[error("fractional integration order d = {0} must satisfy |d| < 0.5")]
    BadD(f64),
    #[error("characteristic exponent alpha = {0} must lie in (0, 2]")]
    BadAlpha(f64),
    #[error("skewness beta = {0} must lie in [-1, 1]")]
    BadBeta(f64),
    #[error("scale sigma = {0} must be positive and finite")]
    BadSigma(f64),
    #[error("degrees of freedom must be at least 1, got {0}")]
    BadDF(u32),
    #[error("autoregressive model is not stationary (root on or inside the unit circle)")]
    ExplosiveModel,
    #[error("burn-in of {0} is below the minimum of 1000")]
    BadBurnIn(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error("block at scale {scale} has zero standard deviation")]
    ZeroDispersion { scale: usize },
    #[error("all block increments at scale {scale} are zero")]
    AllZeroIncrements { scale: usize },
    #[error("partition function is zero at scale {scale}, q = {q}")]
    ZeroPartition { scale: usize, q: f64 },
    #[error("ordinate count {m} outside 1..={max}")]
    BadOrdinateCount { m: usize, max: usize },
    #[error("periodogram ordinate {j} is zero")]
    ZeroOrdinate { j: usize },
    #[error("tail order statistics do not give a positive log argument")]
    NonPositiveTail,
    #[error("all {0} replications failed")]
    AllReplicationsFailed(usize),
    #[error("need at least {needed} values, got {got}")]
    TooFewValues { needed: usize, got: usize },
    #[error("critical value table has no cutoff at level {0}")]
    MissingCutoff(f64),
    #[error("critical value table does not match the requested method or length")]
    TableMismatch,
    #[error("report is missing required cells for classification")]
    IncompleteReport,
}
