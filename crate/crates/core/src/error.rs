use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cyclotomic order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("parameter mismatch: (N, A) = ({0}, {1}) vs ({2}, {3})")]
    ParamMismatch(u32, u32, u32, u32),
    #[error("invalid parameters: {}", .0.join("; "))]
    InvalidParams(Vec<String>),
    #[error("pole at evaluation point: {0} vanishes")]
    Pole(String),
    #[error("negative radicand {0} at evaluation point")]
    BranchCut(String),
    #[error("element is not a unit: {0}")]
    NotUnit(String),
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
    #[error("series did not converge: {0}")]
    Series(String),
    #[error("refused: {0}")]
    Refused(String),
    #[error("{0}")]
    Other(String),
}

pub type Result<T> = std::result::Result<T, Error>;
