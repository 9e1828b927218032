use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("size limit exceeded: {what} is {requested}, limit is {limit}")]
    SizeLimit {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("malformed input: {0}")]
    Format(String),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub(crate) fn parse(offset: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Size caps shared by every module that can blow up combinatorially.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest `n` accepted by partition enumeration.
    pub max_partition_weight: usize,
    /// Largest `n` for which a Young symmetrizer is materialized (n! terms).
    pub max_symmetrizer_n: usize,
    /// Largest dimension of a tensor power `V^{⊗n}` built explicitly.
    pub max_tensor_dim: usize,
    /// Weight bound for deriving certificates of opaque product atoms.
    pub certificate_weight: usize,
    /// Weight bound for the minimal-witness search on objects that are not
    /// built purely from lines.
    pub witness_weight: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_partition_weight: 20,
            max_symmetrizer_n: 7,
            max_tensor_dim: 4096,
            certificate_weight: 6,
            witness_weight: 8,
        }
    }
}

impl Limits {
    pub(crate) fn check(what: &'static str, requested: usize, limit: usize) -> Result<()> {
        if requested > limit {
            Err(Error::SizeLimit {
                what,
                requested,
                limit,
            })
        } else {
            Ok(())
        }
    }
}
