//! Exact computation of primary genus-zero r-spin invariants.
//!
//! The crate is organised around four layers:
//!
//! * [`monodromy`] and [`dominance`]: monodromy vectors, node monodromies,
//!   neighbor moves and the dominance (majorization) order.
//! * [`invariants`]: the invariants `w_r(m)` through the closed inclusion-exclusion
//!   formula, through the 3/4-point base cases, and through an independent
//!   recursion oracle that never touches the closed formula.
//! * [`tropical`]: tropicalizations of Witten classes as weighted fans inside the
//!   tropical moduli space, with balancing and WDVV checks.
//! * [`chambers`]: the piecewise-polynomial (wall/chamber) structure of `w_r`.
//!
//! [`verify`] bundles exhaustive verification suites over bounded ranges of
//! `(n, r)`. All arithmetic is exact.

pub mod chambers;
pub mod dominance;
pub mod error;
pub mod invariants;
pub mod marks;
pub mod monodromy;
pub mod rational;
pub mod tropical;
pub mod verify;

pub use error::{Error, Result};
pub use marks::MarkSet;
pub use monodromy::MonodromyVector;
pub use rational::Rational;
