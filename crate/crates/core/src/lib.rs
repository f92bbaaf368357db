//! Executable combinatorics for semilattices of definable sets.
//!
//! The crate is organised bottom-up:
//!
//! - [`order`]: finite posets, lattices, meet-semilattices, filters and
//!   isomorphism search.
//! - [`finspace`]: finite Alexandrov spaces carrying an exact rational
//!   `[0,1]`-valued metric, with the definability, crispness, coproduct and
//!   soldering operations, plus the definable-set search strategies.
//! - [`gate`]: the AND-gate space, its seven-state symbolic semantics and its
//!   exact discretization.
//! - [`circuit`]: gate circuits built from lattices, Horn-style enumeration of
//!   their definable assignments, presentations and the `Ξ`-rail truncations.
//! - [`tower`]: finite truncations and symbolic limits of chain towers, the
//!   exact-pair gadget, directed-system checks and the "taking turns" metric.
//!
//! Interchangeable algorithms (search strategies, circuit presentations, tower
//! kinds, cell metrics) sit behind small traits and are looked up by name, so
//! front ends can select them at runtime.

pub mod bits;
pub mod circuit;
pub mod finspace;
pub mod gate;
pub mod order;
pub mod rational;
pub mod tower;

pub use rational::Rational;
