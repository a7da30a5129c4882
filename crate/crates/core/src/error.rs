use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("specialization hits a pole of {0}")]
    SpecializationPole(String),
    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("zero vector has no highest term")]
    ZeroVector,
    #[error("level mismatch: expected {expected}/2, found {found}/2")]
    LevelMismatch { expected: i32, found: i32 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("cM vanishes; the module is not of the type considered here")]
    VanishingCentralCharge,
    #[error("weight is not reducible at p = {0}: phi(p) does not vanish")]
    NotReducible(u32),
    #[error("linear system has a {dim}-dimensional solution space where one was expected")]
    NonUniqueSolution { dim: usize },
    #[error("linear system has no solution: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
