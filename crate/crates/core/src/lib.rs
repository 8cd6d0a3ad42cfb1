//! Check-digit schemes, single-error mutation models, a POSTNET-style
//! self-correcting digit code, and a small typed randomized-testing engine
//! used to find which errors each scheme misses.

pub mod cli;
pub mod digits;
pub mod engine;
pub mod error;
pub mod mutate;
pub mod postnet;
pub mod properties;
pub mod schemes;

pub use digits::{Digit, DigitString, IsbnBody};
pub use error::{Error, Result};
pub use schemes::SchemeId;
