//! Combinatorial skeleton of universal rings of invariants.
//!
//! Closed diagrams are encoded as adequate colored graphs ([`graphs`]).
//! Every connected graph covers a unique irreducible base, and coverings of
//! a base with free fundamental group of rank `m` are the same thing as
//! `m`-tuples of permutations up to simultaneous conjugation ([`perm`],
//! [`fm`]). On top of that the crate counts cuspidal elements of the
//! PSH-lattice ([`psh`]), computes Hilbert series three independent ways,
//! and counts finite-index subgroups of a few finitely generated groups
//! ([`subgroups`]).

pub mod arith;
pub mod cli;
pub mod error;
pub mod fm;
pub mod graphs;
pub mod group;
pub mod limits;
pub mod perm;
pub mod psh;
pub mod selftest;
pub mod series;
pub mod subgroups;
pub mod symchar;
pub mod verify;

pub use error::{Error, Result};
pub use limits::Limits;
pub use perm::{Perm, PermTuple};
