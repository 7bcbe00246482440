//! Exact word problems for Baumslag-Solitar groups `BS(m, n)` and for their
//! limits `BS̄(m, ξ)` in the space of marked groups, where `ξ` is an
//! `m`-adic integer known to finite precision.
//!
//! The crate is `no_std` and only needs `alloc`. Everything is a pure
//! function on immutable values:
//!
//! * [`madic`]: residues of `m`-adic integers, gcds, projections, distances.
//! * [`word`]: the free group on `a, b` in b-run-length form.
//! * [`britton`]: Britton reduction in a fixed `BS(m, n)`.
//! * [`engine`]: symbolic Britton reduction over a congruence class of the
//!   second parameter, deciding triviality in the limit group.
//! * [`quotient`]: the lamplighter quotient and affine actions.
//! * [`tree`]: lazy exploration of the limit Bass-Serre tree and relators.
//! * [`marked`]: discriminating words, classification and convergence tests,
//!   explicit witness words.
#![no_std]

extern crate alloc;

pub mod britton;
pub mod engine;
mod error;
pub mod madic;
pub mod marked;
pub mod quotient;
pub mod tree;
pub mod word;

pub use britton::BsParams;
pub use engine::{EngineContext, LimitGroup, PolyExponent, RsTable, SymbolicWord};

pub use error::{Error, Result};
pub use madic::{Distance, MAdicResidue, Modulus};
pub use quotient::{AffineMap, LamplighterElement, LaurentPoly};
pub use tree::{EdgeHandle, LimitTree, VertexHandle};

pub use word::{Letter, Word};
