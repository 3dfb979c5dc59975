//! Exact computation of `s_b(n)`, the number of hyper-`b`-ary expansions of
//! `n - 1`, together with the extremal machinery around it: record positions,
//! the piecewise-linear envelope `h`, the power-law bound `H` and the
//! maximal-order constant `c_b`.
//!
//! Three independent engines compute `s_b`:
//!
//! * [`stern`]: the digit recurrence, memoized or tabulated bottom-up,
//! * [`linrep`]: a 2x2 linear representation evaluated along the base-`b` digits,
//! * [`oracle`]: brute-force counting straight from the definition.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod envelope;
pub mod error;
pub mod linrep;
pub mod numeral;
pub mod oracle;
pub mod real;
pub mod report;
pub mod stern;

pub use envelope::Envelope;
pub use error::Error;
pub use linrep::LinearRep;
pub use numeral::{Base, DigitString};
pub use real::Real;
pub use report::Report;

/// Arbitrary-precision nonnegative integer.
pub type BigCount = num_bigint::BigUint;

/// Exact rational in reduced form with positive denominator.
pub type BigRational = num_rational::BigRational;

pub type Result<T, E = Error> = core::result::Result<T, E>;
