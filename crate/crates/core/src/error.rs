//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("arity mismatch: {0}")]
    Arity(String),
    #[error("invalid base: {0}")]
    InvalidBase(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("degree error: {0}")]
    Degree(String),
    #[error("duplicate signature: {0}")]
    Duplicate(String),
    #[error("unknown name: {0}")]
    Unknown(String),
    #[error("depth overflow: {0}")]
    Depth(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameter: {0}")]
    Param(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
