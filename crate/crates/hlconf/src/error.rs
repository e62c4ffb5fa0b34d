//! Error type shared by the engine.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("arity mismatch: {0}")]
    Arity(String),
    #[error("invalid data: {0}")]
    Invalid(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("representation has no N_M map")]
    MissingNm,
    #[error("order {requested} out of range (data has order {available})")]
    OrderOutOfRange { requested: usize, available: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn dim_check(ok: bool, what: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Dimension(what()))
    }
}
