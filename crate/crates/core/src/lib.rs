//! Exact computations for crepant resolutions of wild quotient 3-fold
//! singularities in characteristic 3.

pub mod cli;
pub mod error;
pub mod gf3m;
pub mod groups;
pub mod invring;
pub mod pipeline;
pub mod report;
pub mod toric;

pub use error::{Error, Result};
