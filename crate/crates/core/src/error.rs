//! Error type shared by every module of the crate.

use thiserror::Error;

/// Broad classification of an [`Error`], used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// The caller supplied parameters outside the documented domain.
    InvalidInput,
    /// The request is well formed but lies outside the supported region.
    Unsupported,
    /// A numerical routine failed to reach its target accuracy.
    Numerical,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("cannot parse half-integer from {0:?}")]
    ParseHalfInt(String),

    #[error("half-integer overflow")]
    HalfIntOverflow,

    #[error("Gamma({0}) is out of the representable range")]
    GammaOverflow(String),

    #[error("pole of Gamma at {0}")]
    Pole(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("lambda = {lambda} is not admissible for ({p}, {q}) with sign {eps}")]
    NotAdmissible {
        p: u32,
        q: u32,
        eps: char,
        lambda: String,
    },

    #[error("split does not match the representation: {0}")]
    SplitMismatch(String),

    #[error("degenerate split: {0}")]
    DegenerateSplit(String),

    #[error("argument outside the domain of {function}: {detail}")]
    Domain {
        function: &'static str,
        detail: String,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("unknown label: {0}")]
    UnknownLabel(String),

    #[error("{routine} did not converge: {detail}")]
    NonConvergence {
        routine: &'static str,
        detail: String,
    },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::ParseHalfInt(_)
            | Error::HalfIntOverflow
            | Error::Pole(_)
            | Error::InvalidParameter(_)
            | Error::NotAdmissible { .. }
            | Error::SplitMismatch(_)
            | Error::DegenerateSplit(_)
            | Error::Domain { .. }
            | Error::UnknownLabel(_) => ErrorKind::InvalidInput,
            Error::Unsupported(_) | Error::GammaOverflow(_) => ErrorKind::Unsupported,
            Error::NonConvergence { .. } => ErrorKind::Numerical,
        }
    }

    /// Stable machine-readable identifier for this error.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ParseHalfInt(_) => "parse_half_int",
            Error::HalfIntOverflow => "half_int_overflow",
            Error::GammaOverflow(_) => "gamma_overflow",
            Error::Pole(_) => "pole",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::NotAdmissible { .. } => "not_admissible",
            Error::SplitMismatch(_) => "split_mismatch",
            Error::DegenerateSplit(_) => "degenerate_split",
            Error::Domain { .. } => "domain",
            Error::Unsupported(_) => "unsupported",
            Error::UnknownLabel(_) => "unknown_label",
            Error::NonConvergence { .. } => "non_convergence",
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            function,
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
