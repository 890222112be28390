//! Quantitative Tverberg partitions over discrete sets, with exact rational
//! certificates for every hull decision.

pub mod engine;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod oracles;
pub mod scalar;
pub mod sets;

pub use error::{Error, Result};
pub use scalar::Scalar;
