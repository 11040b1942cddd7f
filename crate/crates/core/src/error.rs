//! Crate-wide error type.

use thiserror::Error;

/// Everything that can go wrong across the library.
///
/// Variants are grouped roughly by contract: input validation, resource
/// caps, structural preconditions, and internal consistency checks that are
/// surfaced as hard errors rather than silently ignored.
#[derive(Debug, Error)]
pub enum Error {
    /// A word that is supposed to be a permutation of `1..=n` is not.
    #[error("invalid permutation word: {0}")]
    InvalidPermutation(String),

    /// A 1-based position argument lies outside its admissible range.
    #[error("position {position} out of range 1..={max}")]
    PositionOutOfRange { position: usize, max: usize },

    /// A rank argument is at least the number of vertices.
    #[error("rank {rank} out of range (codomain size {count})")]
    RankOutOfRange { rank: u64, count: u64 },

    /// Ranked operations on permutations only support `n <= 20` so that all
    /// ranks fit in a `u64`.
    #[error("n = {n} exceeds the ranking limit {max}")]
    RankingLimit { n: usize, max: usize },

    /// An operation that splits off the last `n - 4` letters was applied to
    /// a word with fewer than 4 letters.
    #[error("word of length {n} is too short to split a 4-letter prefix")]
    WordTooShort { n: usize },

    /// The prefix of a word does not consist of the expected complement
    /// letters, or a suffix mismatch was detected.
    #[error("word {word} is not in the image of the suffix embedding for suffix {suffix}")]
    NotInSuffixImage { word: String, suffix: String },

    /// A vertex argument does not belong to the graph at hand.
    #[error("invalid vertex for {family}: {reason}")]
    InvalidVertex { family: String, reason: String },

    /// Parse failure for a vertex, edge list, or numeric field.
    #[error("parse error: {0}")]
    Parse(String),

    /// The requested operation is not defined for this graph family.
    #[error("{op} is not supported for the {family} family")]
    Unsupported { op: &'static str, family: String },

    /// A 2-coloring was requested but the graph contains an odd cycle.
    #[error("graph is not bipartite: odd cycle through {witness}")]
    NotBipartite { witness: String },

    /// A bracket-word rotation was requested at a position admitting none.
    #[error("no rotation applies at position {position}")]
    RotationNotApplicable { position: usize },

    /// An enumeration would touch more vertices than the configured cap.
    #[error("graph with {needed} vertices exceeds the enumeration cap {cap}")]
    CapExceeded { needed: u64, cap: u64 },

    /// An exact solver guard was hit (instance too large without override).
    #[error("instance too large for exact solving: {what} = {value} exceeds {limit} (pass --hard to override)")]
    SolverGuard {
        what: &'static str,
        value: u64,
        limit: u64,
    },

    /// A product spec is empty or contains a factor smaller than 2.
    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    /// A matching query returned an asymmetric pair; this indicates an
    /// implementation bug and is never silently tolerated.
    #[error("matching symmetry violated at vertex {vertex}: partner {partner} maps elsewhere")]
    SymmetryViolation { vertex: String, partner: String },

    /// A Hall condition that a construction relies on does not hold.
    #[error("Hall condition fails at level {level} ({direction}): matching size {matched} < {required}")]
    HallConditionFailed {
        level: usize,
        direction: String,
        matched: usize,
        required: usize,
    },

    /// An edge file references an edge not present in the graph.
    #[error("edge {u} -- {v} is not an edge of the graph")]
    NotAnEdge { u: String, v: String },

    /// Arithmetic overflow while computing a count.
    #[error("counting overflow: {0}")]
    Overflow(String),

    /// Underlying I/O failure.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
