//! Small maximal matchings on permutahedra, hypercubes, associahedra, and
//! Cartesian products of permutahedra.
//!
//! The crate is organized around implicit graphs: every family exposes a
//! rank/unrank vertex codec and a constant-degree neighbor oracle, so graphs
//! are never stored explicitly unless an algorithm genuinely needs them.
//! On top of that sit
//!
//! * [`matchings`] — stateless matching queries (`vertex -> matched neighbor`)
//!   realizing maximal matchings of size `n!/3` on the permutahedron and of
//!   comparable size on hypercubes and products, plus materialization and
//!   verification helpers;
//! * [`layered`] — symmetric chain decompositions, Hall condition checks and
//!   level-layered matchings built from maximum bipartite matchings;
//! * [`bounds`] — induced-4-cycle "heaviness" machinery and the counting
//!   lower bounds it certifies;
//! * [`exact`] — exact branch-and-bound solvers for minimum maximal matching
//!   and maximum independent set at desk scale, a brute-force cross-check,
//!   and an integer-programming emitter.

pub mod bounds;
pub mod error;
pub mod exact;
pub mod graphs;
pub mod layered;
pub mod matchings;
pub mod perm;

pub use error::Error;
pub use graphs::{BitWord, BracketWord, EdgeLabel, Family, GraphHandle, Vertex};
pub use perm::{Parity, Permutation, Sign, Suffix};

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;

/// Default cap on the number of vertices any enumerating operation will
/// touch. Override per call site or via the `PERMATCH_CAP` environment
/// variable in the CLI.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;
