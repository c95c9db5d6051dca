//! Exact construction and certification of a Toeplitz Hessenberg family of
//! GKK τ-matrices, some of which fail to be positive stable.
//!
//! All symbolic work runs over arbitrary-precision rationals. Floating point
//! appears only in [`rootfind::complex_roots`], whose output is used for
//! witnesses and reporting, never for a certified decision.

pub mod charpoly;
pub mod classify;
pub mod cli;
pub mod error;
pub mod exact;
pub mod family;
pub mod hurwitz;
pub mod reproduce;
pub mod rootfind;

pub use error::{Error, Result};
