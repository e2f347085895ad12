//! Exact-arithmetic construction of the multilinear invariant spaces of the
//! order-96 unitary reflection group (Shephard–Todd No. 8).
//!
//! The pipeline: build the group by closure from its two generators
//! ([`group`]), Reynolds-average elementary monomials into invariant
//! coefficient vectors and expand typical invariants ([`forms`]), select
//! independent subsets and solve change-of-basis systems with exact
//! Gaussian-rational elimination ([`linalg`]), and assemble bases,
//! dimension checks, relation tables and basis completions ([`spaces`]).
//! Everything runs over Q(i) ([`scalar`]); no floating point is involved.

pub mod error;
pub mod forms;
pub mod group;
pub mod linalg;
pub mod reference;
pub mod report;
pub mod scalar;
pub mod spaces;
pub mod verify;

pub use error::{Error, Result};
