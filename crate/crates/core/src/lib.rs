//! Splitting probabilities of random polynomials over a complete discrete
//! valuation ring with residue field of size `q`.
//!
//! The crate computes, exactly and numerically, the probability `r_n` that a
//! random monic degree-`n` polynomial splits into linear factors, the
//! non-monic analogue, the finite-field analogue, and the large-`n`
//! behaviour of these sequences, each by several independent routes that
//! are checked against one another.

pub mod arith;
pub mod asymptotics;
pub mod combinat;
pub mod error;
pub mod nonmonic;
pub mod padic;
pub mod qtrees;
pub mod split;

pub use error::{Error, Result};
