use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Closed set of error codes shared by the library, the CLI and the HTTP API.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorCode {
    BadInput,
    OffQuadric,
    OnGeneratorSpace,
    DegenerateLine,
    NotFound,
}

impl ErrorCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorCode::BadInput => "bad_input",
            ErrorCode::OffQuadric => "off_quadric",
            ErrorCode::OnGeneratorSpace => "on_generator_space",
            ErrorCode::DegenerateLine => "degenerate_line",
            ErrorCode::NotFound => "not_found",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("the zero dual quaternion is not a point of P7")]
    Zero,
    #[error("rotation part vanishes: point lies in the generator space G")]
    OnGeneratorSpace,
    #[error("line meets the generator space G at s = {0}")]
    Puncture(f64),
    #[error("point is off the Study quadric (|e.t| = {0:e} on the normalized representative)")]
    OffQuadric(f64),
    #[error("degenerate line: {0}")]
    DegenerateLine(String),
    #[error("{0}")]
    BadInput(String),
}

impl Error {
    pub fn code(&self) -> ErrorCode {
        match self {
            Error::Zero | Error::BadInput(_) => ErrorCode::BadInput,
            Error::OnGeneratorSpace | Error::Puncture(_) => ErrorCode::OnGeneratorSpace,
            Error::OffQuadric(_) => ErrorCode::OffQuadric,
            Error::DegenerateLine(_) => ErrorCode::DegenerateLine,
        }
    }

    pub(crate) fn bad(msg: impl Into<String>) -> Self {
        Error::BadInput(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn bad(msg: impl Into<String>) -> Error {
    Error::BadInput(msg.into())
}
