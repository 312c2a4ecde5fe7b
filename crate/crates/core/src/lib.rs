pub mod error;
pub mod cli;
pub mod counting;
pub mod lattice;
pub mod patterns;
pub mod resampler;
pub mod snake;
pub mod threshold;
pub mod two_part;

pub use error::{Error, Result};
