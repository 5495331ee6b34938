use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// First failed condition when validating a (graph, group, p, χ) pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Rejection {
    NotPrime { p: u64 },
    BadChi { chi: u32 },
    WrongValency { vertex: usize, valency: usize, expected: usize },
    DegreeMismatch { graph: usize, action: usize },
    NotAutomorphism { generator: usize },
    NotFaithful,
    Disconnected,
    NotVertexTransitive,
    NotEdgeTransitive,
    LocalActionMismatch,
    GvStarMissing,
    NotSymmetric,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::NotPrime { p } => write!(f, "p = {p} is not prime"),
            Rejection::BadChi { chi } => write!(f, "chi must be 1 or 2, got {chi}"),
            Rejection::WrongValency { vertex, valency, expected } => {
                write!(f, "vertex {vertex} has valency {valency}, expected {expected}")
            }
            Rejection::DegreeMismatch { graph, action } => {
                write!(f, "graph has {graph} vertices but the action has degree {action}")
            }
            Rejection::NotAutomorphism { generator } => write!(f, "generator {generator} is not an automorphism"),
            Rejection::NotFaithful => write!(f, "group does not act faithfully"),
            Rejection::Disconnected => write!(f, "graph is disconnected"),
            Rejection::NotVertexTransitive => write!(f, "group is not vertex-transitive"),
            Rejection::NotEdgeTransitive => write!(f, "group is not edge-transitive"),
            Rejection::LocalActionMismatch => write!(f, "local action is not permutation isomorphic to L(p,chi)"),
            Rejection::GvStarMissing => write!(f, "no index-chi p-subgroup with intransitive local image"),
            Rejection::NotSymmetric => write!(f, "arc set is not symmetric"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("not a bijection: {0}")]
    NotBijection(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("group spec parse error at token '{token}' (offset {offset}): {message}")]
    SpecParse { token: String, offset: usize, message: String },
    #[error("budget exceeded in {operation}: needs {needed}, limit {limit}")]
    Budget { operation: String, needed: String, limit: u64 },
    #[error("element is not in the group")]
    NotMember,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("unsupported field size {0}")]
    UnsupportedField(u64),
    #[error("pair rejected: {0}")]
    Rejected(Rejection),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("theorem contradiction (investigate implementation): {0}")]
    Contradiction(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn budget(operation: &str, needed: impl fmt::Display, limit: u64) -> Self {
        Error::Budget { operation: operation.to_string(), needed: needed.to_string(), limit }
    }

    /// Stable snake_case name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DegreeMismatch { .. } => "degree_mismatch",
            Error::PointOutOfRange { .. } => "point_out_of_range",
            Error::NotBijection(_) => "not_bijection",
            Error::Parse { .. } => "parse",
            Error::SpecParse { .. } => "spec_parse",
            Error::Budget { .. } => "budget",
            Error::NotMember => "not_member",
            Error::NotNormal => "not_normal",
            Error::InvalidParams(_) => "invalid_params",
            Error::UnsupportedField(_) => "unsupported_field",
            Error::Rejected(_) => "rejected",
            Error::Precondition(_) => "precondition",
            Error::Contradiction(_) => "contradiction",
            Error::Io(_) => "io",
        }
    }

    /// Domain rejections (as opposed to usage or parse errors).
    pub fn is_domain(&self) -> bool {
        !matches!(self, Error::Parse { .. } | Error::SpecParse { .. } | Error::Io(_))
    }
}

impl From<Rejection> for Error {
    fn from(r: Rejection) -> Self {
        Error::Rejected(r)
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
