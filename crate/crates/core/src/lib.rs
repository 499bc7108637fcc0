//! Fermionic swap network synthesis for grid-structured Hamiltonians.

pub mod bounds;
pub mod error;
pub mod fermioracle;
pub mod format;
pub mod isoperimetry;
pub mod lattice;
pub mod synth;
pub mod verify;

pub use error::{Error, Result};
