pub mod categorify;
pub mod census;
pub mod cochains;
pub mod error;
pub mod extensions;
pub mod groups;
pub mod integrability;
pub mod io;
pub mod sampling;
pub mod verify;

pub use error::{Error, Result};
