//! Exact computational algebra of measurable functions on finite measurable
//! spaces.
//!
//! A finite measurable space is a ground set `X` together with a σ-algebra
//! `𝒜` of subsets. The non-negative measurable functions on it form a
//! commutative lattice-ordered semiring `M⁺(X,𝒜)` under pointwise operations;
//! its ring of differences `M(X,𝒜)` is the full ring of measurable functions.
//! This crate builds those objects with exact rational arithmetic and makes
//! their classical correspondences executable:
//!
//! - [`space`]: σ-algebra generation, atoms, point separation, compactness.
//! - [`func`]: the semiring `M⁺`, zero-sets, agreement sets, divisibility,
//!   Riesz decomposition.
//! - [`ideal`]: ideals of `M⁺` and `M` in canonical core form, the `α`/`β`
//!   lattice isomorphism, z-ideal and strong-ideal checks.
//! - [`filtcong`]: Z-filters, congruences, the agreement-set duality, prime
//!   and maximal congruence tests, twisted products.
//! - [`structure`]: the structure space of maximal congruences, its Stone
//!   topology and measurable structure, the isomorphism-problem transfer.
//! - [`quotient`]: quotient semirings, total order with witnesses, realness
//!   reports, infinitely-large detection.
//! - [`verify`]: exhaustive desk-scale suites that re-check every
//!   correspondence on concrete spaces and report counterexamples.
//!
//! Everything is immutable after construction and uses exact rationals, so
//! every check in the suites is decidable and reproducible.

pub mod dot;
pub mod error;
pub mod filtcong;
pub mod func;
pub mod ideal;
pub mod io;
pub mod quotient;
pub mod space;
pub mod structure;
pub mod sweep;
pub mod verify;

pub use error::Error;

/// Exact scalar used everywhere: arbitrary-precision rational.
pub type Rat = num::BigRational;

/// Shorthand for fallible operations in this crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Convenience: build a `Rat` from an integer pair.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(num.into(), den.into())
}
