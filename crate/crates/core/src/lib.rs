//! Invariants of boundary-quotient Toeplitz algebras of right-angled Artin groups.
//!
//! The pipeline runs from a defining graph to a classification:
//! [`graph`] parses and decomposes the graph, [`euler`] computes graph Euler
//! characteristics, [`kgroups`] evaluates K-groups both in closed form and through
//! a truncated Pimsner-Voiculescu computation, and [`classify`] assembles the
//! per-factor Cuntz-algebra report. [`words`] and [`fock`] check the underlying
//! operator identities symbolically and on a truncated Fock representation.

pub mod classify;
pub mod error;
pub mod euler;
pub mod fock;
pub mod graph;
pub mod kgroups;
pub mod words;

pub use error::{Error, Result};
pub use graph::Graph;
