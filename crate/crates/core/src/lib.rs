pub mod error;
pub mod numerics;
pub mod simplex;
pub mod dynamics;
pub mod limits;
pub mod cli;

pub use error::{Error, Result};
