//! Deciding and constructing prescribed-endpoint path partitions of hypercubes.
//!
//! The n-dimensional hypercube Qₙ has the n-bit strings as vertices, adjacent
//! when they differ in exactly one coordinate.  Given a set of endpoint pairs
//! (a *pair-set*), the question is whether Qₙ splits into vertex-disjoint
//! paths, one per pair, that together cover every vertex.  This crate answers
//! that question two independent ways:
//!
//! * [`oracle`] — an exhaustive backtracking decision procedure for small
//!   dimensions, returning either an explicit path system or a certificate of
//!   impossibility;
//! * [`constructor`] — a recursive builder that assembles path systems from
//!   facet solutions for the catalogued input families, together with the
//!   finite list of obstructions, and reports what it did as a replayable
//!   recipe.
//!
//! Supporting modules: [`vertex`] and [`pair`] define the basic objects and
//! their text literals, [`completion`] implements the merge/split calculus
//! that powers the recursion, [`symmetry`] canonicalizes up to hypercube
//! automorphisms, and [`enumeration`] produces isomorphism-free censuses.

pub mod completion;
pub mod constructor;
pub mod enumeration;
pub mod error;
pub mod forbidden;
pub mod oracle;
pub mod pair;
pub mod symmetry;
pub mod vertex;

pub use constructor::{solve, Refutation, Solution, Trace};
pub use enumeration::{census, enumerate_classes, Census, EdgeCond, Filter, VerdictSource};
pub use error::{Error, Result};
pub use pair::{ClassFlags, Pair, PairSet};
pub use vertex::{Parity, Vertex};
