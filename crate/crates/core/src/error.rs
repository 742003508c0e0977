use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure categories shared by all physics modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A formula was evaluated at one of its poles.
    #[error("singularity: {0}")]
    Singularity(String),
    /// Parameters fall outside the domain where a relation holds.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("kinematics error: {0}")]
    Kinematics(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn singular(msg: impl Into<String>) -> Self {
        Error::Singularity(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn kinematics(msg: impl Into<String>) -> Self {
        Error::Kinematics(msg.into())
    }
}
