//! Linear sets of the form L(alpha, beta) = {<(x - alpha x^{q^2}, x^q - beta x^{q^2})>}
//! on the projective line PG(1, q^5).
//!
//! The crate builds the finite field tower, evaluates q-polynomials, constructs
//! linear sets point by point, classifies parameter pairs against the known
//! maximum scattered families and runs the exhaustive searches that back the
//! classification for small q.

pub mod error;
pub mod gf;
pub mod linpoly;
pub mod linset;
pub mod classify;
pub mod varieties;
pub mod report;
pub mod search;
pub mod suites;
pub mod cli;
pub mod fuzzing;

pub use error::{Error, Result};
pub use gf::{FieldCtx, Fq5Elem};
