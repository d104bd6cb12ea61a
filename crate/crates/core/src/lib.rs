//! Generalized Cesàro means of type `(b-1; c)` and numerical checks of
//! their positivity, stability and subordination properties.

pub mod cli;
pub mod error;
pub mod func;
pub mod geometry;
pub mod numeric;
pub mod quadrature;
pub mod report;
pub mod series;
pub mod special;
pub mod subordination;
pub mod trig;
pub mod verdict;

pub use error::{Error, Result};
