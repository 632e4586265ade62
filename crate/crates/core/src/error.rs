use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A request exceeded one of the configured [`crate::Limits`].
    #[error("resource limit exceeded: {what} = {requested} is above the cap {cap}")]
    ResourceLimit {
        what: &'static str,
        requested: usize,
        cap: usize,
    },
    /// Input outside the domain of an operation (non-covering pair, empty
    /// diagram where one cell is required, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// Malformed or inconsistent input data.
    #[error("validation error: {0}")]
    Validation(String),
    /// A graph or poset violates a structural requirement.
    #[error("structural error: {0}")]
    Structural(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }
}

/// Returns `Err(ResourceLimit)` when `requested > cap`.
pub(crate) fn ensure_cap(what: &'static str, requested: usize, cap: usize) -> Result<()> {
    if requested > cap {
        Err(Error::ResourceLimit {
            what,
            requested,
            cap,
        })
    } else {
        Ok(())
    }
}
