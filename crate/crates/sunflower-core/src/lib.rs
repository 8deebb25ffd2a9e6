pub mod bitset;
pub mod error;
pub mod params;
pub mod real;
pub mod rng;
pub mod setfam;

pub use error::{Error, Result};
