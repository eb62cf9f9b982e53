//! Exact algebra for Lagrangian degeneracy loci: Pfaffians, quadratic forms,
//! Lagrangian pairs, degeneracy ideals and their symmetric resolutions.

pub mod degeneracy;
pub mod error;
pub mod harness;
pub mod ring;
pub mod ideal;
pub mod json;
pub mod pfaffian;
pub mod pairs;
pub mod quadform;
pub mod resolution;
mod util;

pub use error::{Error, Result};
pub use util::combinations;
