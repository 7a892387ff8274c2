//! Exact single-query error analysis for `AND_n` and `EQUALITY_{n+1}`.
//!
//! The optimal one-query error of both functions is `1/2 - n/(n^2+1)`. This
//! crate checks that value from both sides with exact rational arithmetic:
//!
//! * [`query`] simulates the Fourier-sampling algorithm for `EQUALITY_{n+1}`
//!   (upper bound) and the `AND_n` reduction.
//! * [`lower_bound`] carries the closed forms of the polynomial-method lower
//!   bound, the optimal quadratic witness, and two independent falsification
//!   oracles (a rational grid and a numeric search over one-query algorithms).
//! * [`multilinear`] and [`univariate`] implement polynomials on the `±1`
//!   hypercube and their symmetrization.
//! * [`blekherman`] builds and verifies Blekherman-form certificates for
//!   symmetrized squares.
//!
//! The crate is `no_std` and only needs `alloc`. IO, file formats and the
//! command line live in the `sqerr` companion crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod blekherman;
mod budget;
pub mod combinatorics;
mod error;
pub mod lower_bound;
pub mod multilinear;
pub mod nelder_mead;
pub mod query;
pub mod rational;
pub mod sign;
pub mod univariate;

pub use budget::Budget;
pub use error::Error;
pub use multilinear::{Monomial, MultilinearPoly};
pub use rational::Rational;
pub use sign::SignVector;
pub use univariate::UnivariatePoly;

/// Result alias used throughout the crate.
pub type Result<T, E = Error> = core::result::Result<T, E>;
