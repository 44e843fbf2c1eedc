use alloc::string::String;

/// Errors raised by the engine. Check failures are not errors; they are
/// reported through [`crate::Verdict`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension {requested} is above the tracked bound {bound}")]
    DimensionBound { requested: usize, bound: usize },
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("invalid simplicial data: {0}")]
    InvalidData(String),
    #[error("invalid category: {0}")]
    InvalidCategory(String),
    #[error("not a quasicategory: {0}")]
    NotQuasicategory(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("malformed decomposition: {0}")]
    MalformedPartition(String),
    #[error("invalid graph data: {0}")]
    InvalidGraph(String),
    #[error("graph is disconnected")]
    Disconnected,
}

pub type Result<T> = core::result::Result<T, Error>;
