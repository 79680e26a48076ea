use thiserror::Error;

use crate::textio::{ParseError, SystemError};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} is capped at j+k <= {limit}, requested j+k = {requested}")]
    CapExceeded { what: &'static str, limit: u32, requested: u32 },

    #[error("slot u={u}, v={v} is out of range for j+k={degree} (needs 2u+v <= j+k)")]
    SlotOutOfRange { u: u32, v: u32, degree: u32 },

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error(transparent)]
    System(#[from] SystemError),
}
