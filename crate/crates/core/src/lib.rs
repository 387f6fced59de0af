//! Core algorithms for Ramsey problems on Kneser graphs.
//!
//! The crate is organized around a small subset kernel ([`combin`]) on which
//! everything else is built:
//!
//! * [`kneser`] — the Kneser graph `KG(n, r)` with frozen vertex/edge index
//!   spaces, clique enumeration, and the explicit proper coloring.
//! * [`coloring`] — red/blue edge colorings and every verification predicate
//!   (monochromatic cliques, monochromatic induced subgraphs, set-family
//!   triangles with empty triple intersection).
//! * [`constructions`] — generators for the explicit colorings with provable
//!   guarantees (chromatic lift, triangle-free split, induced-matching
//!   coloring, partition coloring from a hypergraph 2-coloring).
//! * [`sat`] — CNF encoding of "does a good coloring exist?", a built-in
//!   CDCL solver, and DIMACS interchange with external solvers.
//! * [`bounds`] — a table of known classical Ramsey values plus the
//!   closed-form lower/upper bound theorems and grid regeneration.
//! * [`witness`] — executable forms of the constructive proofs, driven by a
//!   pair-coloring oracle.
//!
//! Everything is deterministic: index spaces are frozen, enumeration orders
//! are canonical, and repeated runs produce identical results. The crate is
//! `no_std` (with `alloc`); IO, certificates, and the CLI live in the
//! companion `kneser-cli` crate.

#![no_std]
#![warn(missing_docs)]

extern crate alloc;

pub mod bounds;
pub mod coloring;
pub mod combin;
pub mod constructions;
pub mod error;
pub mod kneser;
pub mod sat;
pub mod witness;

pub use coloring::{Color, EdgeColoring};
pub use combin::RSet;
pub use error::Error;
pub use kneser::KneserGraph;
