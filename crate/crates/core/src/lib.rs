//! Exact q-series arithmetic and congruence verification for regular
//! multipartition counting functions.

pub mod cache;
pub mod coefficients;
pub mod conditional;
pub mod dissection;
pub mod error;
pub mod eta;
pub mod expr;
pub mod family;
pub mod oracle;
pub mod primes;
pub mod report;
pub mod ring;
pub mod series;
pub mod suite;

pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use ring::{CoeffRing, Integers, RingSpec, Zmod};
pub use series::TruncatedSeries;

/// Exact integers backed by arbitrary-precision `BigInt`.
pub type ZZ = Integers<num_bigint::BigInt>;
/// Exact integers in a fixed 128-bit word; callers bound the coefficient size.
pub type Z128 = Integers<i128>;
/// Exact integers in a fixed 64-bit word.
pub type Z64 = Integers<i64>;

pub type ZSeries = TruncatedSeries<ZZ>;
pub type Z128Series = TruncatedSeries<Z128>;
pub type ModSeries = TruncatedSeries<Zmod>;
