//! Toolkit for promise SAT over non-Boolean domains.
//!
//! A SetSAT literal asserts that a variable over `[d] = {1, ..., d}` lies in a
//! fixed subset of size `s`; a clause is a disjunction of `k` such literals.
//! The `(a, g, k)` promise problem asks for an `a`-satisfying assignment of an
//! instance promised to be `g`-satisfiable.
//!
//! Modules:
//!
//! * [`model`]: instances, assignments, the `.setsat` format, PCSP templates.
//! * [`solvers`]: the randomized walk, a brute-force oracle, planted instances.
//! * [`polymorph`]: function tables, minors, smug sets, the polymorphism
//!   criteria and the explicit constructions (`q_S`, `q_m`, Olšák, Siggers).
//! * [`labelcover`]: bipartite and layered label cover, chains, decoding,
//!   minor conditions and projection robustness.
//! * [`reductions`]: gadget reductions between promise problems and an
//!   oracle-backed verification harness.

pub mod error;
pub mod labelcover;
pub mod model;
pub mod polymorph;
pub mod reductions;
pub mod solvers;

mod combin;

pub use error::{Error, Result};

/// Exact fraction used for every verdict that compares a ratio to a threshold.
pub type Fraction = num_rational::Ratio<u64>;

/// A domain value in `1..=d`.
pub type Value = u8;

/// Largest supported domain size; literal sets are stored as 64-bit masks.
pub const MAX_DOMAIN: usize = 64;
