use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("out of fuel: {0}")]
    OutOfFuel(String),
    #[error("undecidable by this hook: {0}")]
    Undecidable(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
