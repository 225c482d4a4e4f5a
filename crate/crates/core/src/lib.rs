pub mod curve;
pub mod error;
pub mod gf;
pub mod graph;
pub mod group;
pub mod local;
pub mod rep;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};

/// Exact rational numbers used throughout.
pub type Rational = num_rational::Ratio<i64>;
