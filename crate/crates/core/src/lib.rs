pub mod certificate;
pub mod cli;
pub mod error;
pub mod exactpoly;
pub mod factorengine;
pub mod modarith;
pub mod numberfield;
pub mod obstructions;
pub mod pcforbits;

pub use error::{Error, Result};
