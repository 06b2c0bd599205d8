//! Computational toolkit around the Ankeny–Artin–Chowla congruence for real
//! quadratic fields `ℚ(√p)`.

pub mod congruences;
pub mod cyclotomic;
pub mod error;
pub mod gaac;
pub mod modmath;
pub mod padiclog;
pub mod precision;
pub mod quadfield;

pub use error::{Error, Result};
