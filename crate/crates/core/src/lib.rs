#![no_std]
//! Generalized Khovanov homology with exact integer arithmetic.
//!
//! The pipeline runs diagram → cube of resolutions → graded complex over
//! `R = Z[X, Y, Z^{±1}]/(X² = Y² = 1)` → specialization → homology. Every
//! stage checks its algebraic invariants and reports violations as
//! [`Error::Internal`].

extern crate alloc;

pub mod coeff;
pub mod complex;
pub mod cube;
pub mod diagram;
pub mod error;
pub mod frobenius;
pub mod homology;

pub use error::{Error, Result};
