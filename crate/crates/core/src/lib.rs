//! Executable constructions on finite relative categories: zigzag categories,
//! Grothendieck constructions, nerve homology and the certificates built on
//! them (homotopy pullbacks, three-arrow calculus, Segal condition).

mod error;
mod limits;
mod util;

#[cfg(test)]
mod testutil;

pub mod fincat;

pub use error::{Error, Result};
pub use limits::{Limits, BUDGET_ENV};
pub mod classify;
pub mod evidence;
pub mod groth;
pub mod homology;
pub mod hpb;
pub mod relcat;
pub mod report;
