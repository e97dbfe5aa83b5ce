//! Exact computational machinery for sums of two continued fractions with
//! large partial quotients.
//!
//! For an integer `k >= 2`, let `S(k)` denote the set of numbers in `[0, 1]`
//! whose continued fraction expansion uses only partial quotients `>= k`
//! (together with 0 itself). This crate provides, in exact big-integer
//! arithmetic throughout:
//!
//! * [`cf`] — canonical continued fractions, convergents, continuants,
//!   cylinder intervals, and a lower bound for ratios of continuants.
//! * [`source`] — exact number sources (rationals, quadratic surds, digit
//!   streams) exposing partial quotients of shifted values.
//! * [`decompose`] — the greedy two-expansion construction that writes
//!   `x ∈ (0, 1/(k-1)]` as a sum of two continued fractions with all
//!   partial quotients `>= k`, with per-step certificates.
//! * [`gaps`] — the explicit intervals in `[0, 2/k]` that the sumset
//!   `S(k) + S(k)` misses, their ordering around `sqrt(k^2+4) - k`, and a
//!   disjointness verifier.
//! * [`oracle`] — brute-force enumeration of `S(k)` up to a denominator
//!   bound and sumset membership searches, used to cross-check everything
//!   else at desk scale.
//!
//! No floating point is used anywhere: all comparisons and all reported
//! bounds are exact rational or integer statements.

pub mod cf;
pub mod decompose;
mod error;
pub mod gaps;
pub mod oracle;
pub mod rational;
pub mod source;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
