//! Multiplier sections for the cubic family `z^3 + a z + b`.

pub mod certify;
pub mod curves;
pub mod dynamics;
pub mod error;
pub mod genus;
pub mod modspace;
pub mod reduction;
pub mod sections;
pub mod verify;

pub use error::{Error, Result};
