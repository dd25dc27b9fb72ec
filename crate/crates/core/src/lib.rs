//! Exact polyhedral calculus for extended-real and set-valued convex
//! functions with values in upper sets.

pub mod conaffine;
pub mod duality;
pub mod error;
pub mod ext_real;
pub mod gen;
pub mod polyhedra;
pub mod props;
pub mod rational;
pub mod scalar;
pub mod setvalued;
pub mod upper_set;

pub use error::{Error, Result};
pub use ext_real::ExtReal;
pub use rational::Rat;
