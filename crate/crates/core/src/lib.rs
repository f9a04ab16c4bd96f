pub mod cli;
pub mod error;
pub mod fixtures;
pub mod folding;
pub mod homology;
pub mod molecule;
pub mod nerve;
pub mod precub;

pub use error::{Error, Result};
