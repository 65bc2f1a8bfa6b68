use thiserror::Error;

use crate::wire::DecodeError;

/// Broad failure classes. The CLI maps these onto its exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Caller passed arguments that violate an operation's preconditions.
    Usage,
    /// A key is not covered by the warrant it is used under.
    Unauthorized,
    /// Input bytes did not decode, or a decoded object failed validation.
    Malformed,
    /// The entropy source failed.
    Environment,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown domain-separation tag {0:?}")]
    UnknownTag(Vec<u8>),
    #[error("scalar must be nonzero")]
    ZeroScalar,
    #[error("public key is the identity element")]
    IdentityKey,
    #[error("authorized proxy list is empty")]
    EmptyAuthorizedList,
    #[error("ring is empty")]
    EmptyRing,
    #[error("duplicate key in list")]
    DuplicateKey,
    #[error("warrant names a different original signer")]
    OriginalMismatch,
    #[error("signer index {index} out of range for ring of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("signer key is not at ring index {0}")]
    SignerNotAtIndex(usize),
    #[error("proxy key is not listed in the warrant")]
    NotAuthorized,
    #[error("delegation token failed verification")]
    InvalidToken,
    #[error("proxy key material is inconsistent with its warrant")]
    InvalidProxyKey,
    #[error("entropy source failed: {0}")]
    Entropy(String),
    #[error(transparent)]
    Decode(#[from] DecodeError),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::NotAuthorized => ErrorKind::Unauthorized,
            Error::InvalidToken | Error::InvalidProxyKey | Error::Decode(_) => ErrorKind::Malformed,
            Error::Entropy(_) => ErrorKind::Environment,
            _ => ErrorKind::Usage,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
