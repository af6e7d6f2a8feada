//! Effectively inseparable theories, Janiczak's theory J and the
//! constructions producing strictly interpretability-weaker EI theories.

pub(crate) mod bigdec;
pub mod construct;
pub mod error;
pub mod inseparable;
pub mod janiczak;
pub mod logic;
pub mod recfun;
pub mod textcode;
pub mod verify;

pub use error::{Error, Result};
