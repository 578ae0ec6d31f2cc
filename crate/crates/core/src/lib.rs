//! Exact cochain calculus, extension theory and crossed modules for
//! finite-dimensional Lie algebras over ℚ.

pub mod catalog;
pub mod cochain;
pub mod cohomology;
pub mod crossed;
pub mod currents;
pub mod error;
pub mod extension;
pub mod io;
pub mod lie;
pub mod linalg;
pub mod reproduce;
pub mod scalar;
pub mod symmetry;

pub use error::{Error, Result};
pub use scalar::Scalar;
