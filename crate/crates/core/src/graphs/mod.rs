//! Implicit graph families behind one handle: permutahedra, hypercubes,
//! rotation graphs of binary trees, and Cartesian products of permutahedra.
//!
//! Every family provides a rank codec (`encode`/`decode` between vertices
//! and `0..vertex_count`), a neighbor oracle returning `(neighbor, label)`
//! pairs in ascending label order, and edge labels that can be applied from
//! either endpoint of an edge to reach the other. Enumeration never stores
//! the graph: iterators decode one vertex at a time.

mod assoc;

pub use assoc::BracketWord;

use crate::perm::{factorial, Parity, Permutation, MAX_RANKED_N};
use crate::{Error, Result};
use std::fmt;
use std::sync::OnceLock;

/// Largest hypercube dimension; keeps vertex codes inside a `u64`.
pub const MAX_CUBE_N: usize = 63;

/// Largest bracket-word size for the rotation family; Catalan(19) is the
/// last Catalan number below 2^33 and the codec table stays tiny.
pub const MAX_ASSOC_N: usize = 19;

/// The four supported graph families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Perm,
    Cube,
    Assoc,
    Product,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Family::Perm => "perm",
            Family::Cube => "cube",
            Family::Assoc => "assoc",
            Family::Product => "product",
        };
        write!(f, "{name}")
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Family> {
        match s {
            "perm" => Ok(Family::Perm),
            "cube" => Ok(Family::Cube),
            "assoc" => Ok(Family::Assoc),
            "product" => Ok(Family::Product),
            other => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }
}

/// A fixed-length bit word; position 1 is the leftmost bit of the text form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitWord {
    n: usize,
    bits: u64,
}

impl BitWord {
    /// Wrap `n` bits stored so that the text form is the binary numeral.
    pub fn new(n: usize, bits: u64) -> Result<BitWord> {
        if n == 0 || n > MAX_CUBE_N {
            return Err(Error::InvalidVertex {
                family: "cube".into(),
                reason: format!("dimension {n} out of range 1..={MAX_CUBE_N}"),
            });
        }
        if n < 64 && bits >> n != 0 {
            return Err(Error::InvalidVertex {
                family: "cube".into(),
                reason: format!("bits {bits:#b} exceed dimension {n}"),
            });
        }
        Ok(BitWord { n, bits })
    }

    /// Parse a string of `0`/`1` characters.
    pub fn parse(text: &str) -> Result<BitWord> {
        let text = text.trim();
        let n = text.len();
        let mut bits = 0u64;
        if n == 0 || n > MAX_CUBE_N {
            return Err(Error::Parse(format!("bad bit word length {n}")));
        }
        for c in text.chars() {
            bits = (bits << 1)
                | match c {
                    '0' => 0,
                    '1' => 1,
                    other => return Err(Error::Parse(format!("bad bit {other:?}"))),
                };
        }
        Ok(BitWord { n, bits })
    }

    /// Word length.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The raw bits (text form read as a binary numeral).
    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Number of ones.
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// The bit at 1-based position `i` (leftmost is position 1).
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i >= 1 && i <= self.n);
        (self.bits >> (self.n - i)) & 1 == 1
    }

    /// Flip the bit at 1-based position `i`.
    pub fn flip(&self, i: usize) -> Result<BitWord> {
        if i == 0 || i > self.n {
            return Err(Error::PositionOutOfRange {
                position: i,
                max: self.n,
            });
        }
        Ok(BitWord {
            n: self.n,
            bits: self.bits ^ (1 << (self.n - i)),
        })
    }
}

impl fmt::Display for BitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.n {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// A vertex of one of the graph families.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Perm(Permutation),
    Cube(BitWord),
    Assoc(BracketWord),
    Product(Vec<Permutation>),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Perm(p) => write!(f, "{p}"),
            Vertex::Cube(b) => write!(f, "{b}"),
            Vertex::Assoc(w) => write!(f, "{w}"),
            Vertex::Product(parts) => {
                let joined: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", joined.join("|"))
            }
        }
    }
}

impl Vertex {
    /// The permutation inside, if this is a permutahedron vertex.
    pub fn as_perm(&self) -> Option<&Permutation> {
        match self {
            Vertex::Perm(p) => Some(p),
            _ => None,
        }
    }

    /// The bit word inside, if this is a hypercube vertex.
    pub fn as_cube(&self) -> Option<&BitWord> {
        match self {
            Vertex::Cube(b) => Some(b),
            _ => None,
        }
    }
}

/// Label of an edge, interpreted relative to either endpoint.
///
/// Labels sort ascending within a family, which fixes the neighbor order
/// everywhere. Applying a label to a vertex of the edge yields the other
/// endpoint (`Tau`/`Bit`/`Factor` act directly; `Quad` names the
/// quadrilateral of leaves whose diagonal the rotation flips, which is the
/// same from both sides).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeLabel {
    /// Adjacent transposition at 1-based position `i`.
    Tau(usize),
    /// Bit flip at 1-based position `i`.
    Bit(usize),
    /// Rotation across the leaf quadrilateral `(a, b, c, d)`.
    Quad([u16; 4]),
    /// Transposition `tau` inside factor `factor` (both 1-based).
    Factor { factor: usize, tau: usize },
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeLabel::Tau(i) => write!(f, "tau={i}"),
            EdgeLabel::Bit(i) => write!(f, "bit={i}"),
            EdgeLabel::Quad([a, b, c, d]) => write!(f, "quad={a}-{b}-{c}-{d}"),
            EdgeLabel::Factor { factor, tau } => write!(f, "f{factor}.tau={tau}"),
        }
    }
}

/// Reference vertex/edge counts for the rotation family, checked at
/// construction time.
const ASSOC_REFERENCE_COUNTS: &[(usize, u64, u64)] =
    &[(2, 2, 1), (3, 5, 5), (4, 14, 21), (5, 42, 84), (6, 132, 330)];

enum HandleKind {
    Perm {
        n: usize,
    },
    Cube {
        n: usize,
    },
    Assoc {
        n: usize,
        codec: assoc::BallotCodec,
        coloring: OnceLock<Option<Vec<Parity>>>,
    },
    Product {
        factors: Vec<usize>,
        /// Mixed-radix weights: weight of factor `i` is the product of the
        /// factorials of the later factors.
        weights: Vec<u64>,
    },
}

/// A handle to one graph: counts, codec, neighbor oracle, level structure.
pub struct GraphHandle {
    kind: HandleKind,
    vertex_count: u64,
    edge_count: u64,
    degree: usize,
}

impl GraphHandle {
    /// The permutahedron: all of `S_n` under adjacent transpositions.
    pub fn perm(n: usize) -> Result<GraphHandle> {
        if n == 0 {
            return Err(Error::InvalidSpec("permutahedron needs n >= 1".into()));
        }
        if n > MAX_RANKED_N {
            return Err(Error::RankingLimit {
                n,
                max: MAX_RANKED_N,
            });
        }
        let count = factorial(n);
        Ok(GraphHandle {
            kind: HandleKind::Perm { n },
            vertex_count: count,
            edge_count: count * (n as u64 - 1) / 2,
            degree: n - 1,
        })
    }

    /// The hypercube on `n`-bit words under single bit flips.
    pub fn cube(n: usize) -> Result<GraphHandle> {
        if n == 0 || n > MAX_CUBE_N {
            return Err(Error::InvalidSpec(format!(
                "hypercube dimension {n} out of range 1..={MAX_CUBE_N}"
            )));
        }
        let count = 1u64 << n;
        Ok(GraphHandle {
            kind: HandleKind::Cube { n },
            vertex_count: count,
            edge_count: (count >> 1) * n as u64,
            degree: n,
        })
    }

    /// The rotation graph of binary trees with `n` internal nodes, on
    /// balanced bracket words of length `2n`.
    pub fn assoc(n: usize) -> Result<GraphHandle> {
        if n == 0 || n > MAX_ASSOC_N {
            return Err(Error::InvalidSpec(format!(
                "bracket-word size {n} out of range 1..={MAX_ASSOC_N}"
            )));
        }
        let codec = assoc::BallotCodec::new(n);
        let count = codec.total();
        let edge_count = count * (n as u64 - 1) / 2;
        for &(m, v, e) in ASSOC_REFERENCE_COUNTS {
            if m == n && (v, e) != (count, edge_count) {
                return Err(Error::Overflow(format!(
                    "rotation graph counts for n = {n} disagree with the reference table: \
                     got ({count}, {edge_count}), expected ({v}, {e})"
                )));
            }
        }
        Ok(GraphHandle {
            kind: HandleKind::Assoc {
                n,
                codec,
                coloring: OnceLock::new(),
            },
            vertex_count: count,
            edge_count,
            degree: n - 1,
        })
    }

    /// The Cartesian product of permutahedra with the given factor sizes.
    /// Factors are sorted descending, so the largest factor comes first.
    pub fn product(spec: &[usize]) -> Result<GraphHandle> {
        if spec.is_empty() {
            return Err(Error::InvalidSpec("empty factor list".into()));
        }
        let mut factors = spec.to_vec();
        if factors.iter().any(|&f| f < 2) {
            return Err(Error::InvalidSpec(format!(
                "factors must be at least 2, got {factors:?}"
            )));
        }
        if factors.iter().any(|&f| f > MAX_RANKED_N) {
            return Err(Error::InvalidSpec(format!(
                "factors must be at most {MAX_RANKED_N}, got {factors:?}"
            )));
        }
        factors.sort_unstable_by(|a, b| b.cmp(a));
        let mut weights = vec![1u64; factors.len()];
        for i in (0..factors.len() - 1).rev() {
            weights[i] = weights[i + 1]
                .checked_mul(factorial(factors[i + 1]))
                .ok_or_else(|| Error::Overflow(format!("product spec {factors:?}")))?;
        }
        let vertex_count = weights[0]
            .checked_mul(factorial(factors[0]))
            .ok_or_else(|| Error::Overflow(format!("product spec {factors:?}")))?;
        let degree: usize = factors.iter().map(|&f| f - 1).sum();
        let edge_count = vertex_count
            .checked_mul(degree as u64)
            .ok_or_else(|| Error::Overflow(format!("product spec {factors:?}")))?
            / 2;
        Ok(GraphHandle {
            kind: HandleKind::Product { factors, weights },
            vertex_count,
            edge_count,
            degree,
        })
    }

    /// Which family this handle belongs to.
    pub fn family(&self) -> Family {
        match self.kind {
            HandleKind::Perm { .. } => Family::Perm,
            HandleKind::Cube { .. } => Family::Cube,
            HandleKind::Assoc { .. } => Family::Assoc,
            HandleKind::Product { .. } => Family::Product,
        }
    }

    /// The size parameter for the single-parameter families.
    pub fn n(&self) -> Option<usize> {
        match self.kind {
            HandleKind::Perm { n } | HandleKind::Cube { n } | HandleKind::Assoc { n, .. } => {
                Some(n)
            }
            HandleKind::Product { .. } => None,
        }
    }

    /// The factor list (descending) for products.
    pub fn spec(&self) -> Option<&[usize]> {
        match &self.kind {
            HandleKind::Product { factors, .. } => Some(factors),
            _ => None,
        }
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> u64 {
        self.vertex_count
    }

    /// Number of edges.
    pub fn edge_count(&self) -> u64 {
        self.edge_count
    }

    /// Common degree (all four families are regular).
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Check that a vertex belongs to this graph.
    pub fn validate_vertex(&self, v: &Vertex) -> Result<()> {
        let ok = match (&self.kind, v) {
            (HandleKind::Perm { n }, Vertex::Perm(p)) => p.n() == *n,
            (HandleKind::Cube { n }, Vertex::Cube(b)) => b.n() == *n,
            (HandleKind::Assoc { n, .. }, Vertex::Assoc(w)) => w.internal_nodes() == *n,
            (HandleKind::Product { factors, .. }, Vertex::Product(parts)) => {
                parts.len() == factors.len()
                    && parts.iter().zip(factors).all(|(p, &f)| p.n() == f)
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                family: self.family().to_string(),
                reason: format!("{v} does not belong to this graph"),
            })
        }
    }

    /// Rank a vertex into `0..vertex_count`.
    pub fn encode(&self, v: &Vertex) -> Result<u64> {
        self.validate_vertex(v)?;
        Ok(match (&self.kind, v) {
            (HandleKind::Perm { .. }, Vertex::Perm(p)) => p.lex_rank()?,
            (HandleKind::Cube { .. }, Vertex::Cube(b)) => b.bits(),
            (HandleKind::Assoc { codec, .. }, Vertex::Assoc(w)) => codec.rank(w),
            (HandleKind::Product { weights, .. }, Vertex::Product(parts)) => {
                let mut code = 0u64;
                for (part, w) in parts.iter().zip(weights) {
                    code += part.lex_rank()? * w;
                }
                code
            }
            _ => unreachable!("validated"),
        })
    }

    /// Inverse of [`encode`](Self::encode).
    pub fn decode(&self, code: u64) -> Result<Vertex> {
        if code >= self.vertex_count {
            return Err(Error::RankOutOfRange {
                rank: code,
                count: self.vertex_count,
            });
        }
        Ok(match &self.kind {
            HandleKind::Perm { n } => Vertex::Perm(Permutation::lex_unrank(*n, code)?),
            HandleKind::Cube { n } => Vertex::Cube(BitWord::new(*n, code)?),
            HandleKind::Assoc { codec, .. } => Vertex::Assoc(codec.unrank(code)?),
            HandleKind::Product { factors, weights } => {
                let mut parts = Vec::with_capacity(factors.len());
                let mut rest = code;
                for (&f, &w) in factors.iter().zip(weights) {
                    parts.push(Permutation::lex_unrank(f, rest / w)?);
                    rest %= w;
                }
                Vertex::Product(parts)
            }
        })
    }

    /// Parse the text form of a vertex of this graph.
    pub fn parse_vertex(&self, text: &str) -> Result<Vertex> {
        let v = match &self.kind {
            HandleKind::Perm { .. } => Vertex::Perm(Permutation::parse(text)?),
            HandleKind::Cube { .. } => Vertex::Cube(BitWord::parse(text)?),
            HandleKind::Assoc { .. } => Vertex::Assoc(BracketWord::parse(text)?),
            HandleKind::Product { .. } => Vertex::Product(
                text.split('|')
                    .map(Permutation::parse)
                    .collect::<Result<_>>()?,
            ),
        };
        self.validate_vertex(&v)?;
        Ok(v)
    }

    /// All neighbors with their edge labels, in ascending label order.
    pub fn neighbors(&self, v: &Vertex) -> Result<Vec<(Vertex, EdgeLabel)>> {
        self.validate_vertex(v)?;
        Ok(match (&self.kind, v) {
            (HandleKind::Perm { n }, Vertex::Perm(p)) => (1..*n)
                .map(|i| {
                    (
                        Vertex::Perm(p.apply_transposition(i).expect("in range")),
                        EdgeLabel::Tau(i),
                    )
                })
                .collect(),
            (HandleKind::Cube { n }, Vertex::Cube(b)) => (1..=*n)
                .map(|i| (Vertex::Cube(b.flip(i).expect("in range")), EdgeLabel::Bit(i)))
                .collect(),
            (HandleKind::Assoc { .. }, Vertex::Assoc(w)) => assoc::rotation_neighbors(w)
                .into_iter()
                .map(|(nb, quad)| (Vertex::Assoc(nb), EdgeLabel::Quad(quad)))
                .collect(),
            (HandleKind::Product { factors, .. }, Vertex::Product(parts)) => {
                let mut out = Vec::with_capacity(self.degree);
                for (fi, (&f, part)) in factors.iter().zip(parts).enumerate() {
                    for tau in 1..f {
                        let mut next = parts.clone();
                        next[fi] = part.apply_transposition(tau).expect("in range");
                        out.push((
                            Vertex::Product(next),
                            EdgeLabel::Factor {
                                factor: fi + 1,
                                tau,
                            },
                        ));
                    }
                }
                out
            }
            _ => unreachable!("validated"),
        })
    }

    /// Follow an edge label from a vertex to the opposite endpoint.
    pub fn apply_label(&self, v: &Vertex, label: &EdgeLabel) -> Result<Vertex> {
        self.validate_vertex(v)?;
        match (&self.kind, v, label) {
            (HandleKind::Perm { .. }, Vertex::Perm(p), EdgeLabel::Tau(i)) => {
                Ok(Vertex::Perm(p.apply_transposition(*i)?))
            }
            (HandleKind::Cube { .. }, Vertex::Cube(b), EdgeLabel::Bit(i)) => {
                Ok(Vertex::Cube(b.flip(*i)?))
            }
            (HandleKind::Assoc { .. }, Vertex::Assoc(w), EdgeLabel::Quad(q)) => {
                for (nb, quad) in assoc::rotation_neighbors(w) {
                    if quad == *q {
                        return Ok(Vertex::Assoc(nb));
                    }
                }
                Err(Error::InvalidVertex {
                    family: "assoc".into(),
                    reason: format!("no rotation with label quad{q:?} at {w}"),
                })
            }
            (HandleKind::Product { factors, .. }, Vertex::Product(parts), EdgeLabel::Factor { factor, tau }) => {
                if *factor == 0 || *factor > factors.len() {
                    return Err(Error::PositionOutOfRange {
                        position: *factor,
                        max: factors.len(),
                    });
                }
                let mut next = parts.clone();
                next[*factor - 1] = next[*factor - 1].apply_transposition(*tau)?;
                Ok(Vertex::Product(next))
            }
            _ => Err(Error::InvalidVertex {
                family: self.family().to_string(),
                reason: format!("label {label} does not apply here"),
            }),
        }
    }

    /// Level of a vertex: inversions on the permutahedron, weight on the
    /// hypercube. The other families have no level structure.
    pub fn level(&self, v: &Vertex) -> Result<u64> {
        self.validate_vertex(v)?;
        match (&self.kind, v) {
            (HandleKind::Perm { .. }, Vertex::Perm(p)) => Ok(p.inversion_count()),
            (HandleKind::Cube { .. }, Vertex::Cube(b)) => Ok(b.weight() as u64),
            _ => Err(Error::Unsupported {
                op: "level",
                family: self.family().to_string(),
            }),
        }
    }

    /// Top level index: `C(n,2)` for the permutahedron, `n` for the cube.
    pub fn max_level(&self) -> Result<usize> {
        match self.kind {
            HandleKind::Perm { n } => Ok(n * (n - 1) / 2),
            HandleKind::Cube { n } => Ok(n),
            _ => Err(Error::Unsupported {
                op: "level",
                family: self.family().to_string(),
            }),
        }
    }

    /// Sizes of all levels, bottom to top (Mahonian numbers for the
    /// permutahedron, binomials for the cube).
    pub fn level_sizes(&self) -> Result<Vec<u64>> {
        match self.kind {
            HandleKind::Perm { n } => Ok(mahonian_row(n)),
            HandleKind::Cube { n } => {
                let mut row = Vec::with_capacity(n + 1);
                let mut c = 1u64;
                for k in 0..=n {
                    row.push(c);
                    if k < n {
                        c = c * (n - k) as u64 / (k + 1) as u64;
                    }
                }
                Ok(row)
            }
            _ => Err(Error::Unsupported {
                op: "level_sizes",
                family: self.family().to_string(),
            }),
        }
    }

    /// A proper 2-coloring, when one exists: inversion parity, bit-weight
    /// parity, and their product-wise combination are used directly; the
    /// rotation family is checked by search and reports odd cycles honestly.
    pub fn bipartition_color(&self, v: &Vertex) -> Result<Parity> {
        self.validate_vertex(v)?;
        match (&self.kind, v) {
            (HandleKind::Perm { .. }, Vertex::Perm(p)) => Ok(p.parity()),
            (HandleKind::Cube { .. }, Vertex::Cube(b)) => Ok(Parity::of(b.weight() as u64)),
            (HandleKind::Product { .. }, Vertex::Product(parts)) => Ok(parts
                .iter()
                .map(|p| p.parity())
                .fold(Parity::Even, Parity::xor)),
            (HandleKind::Assoc { coloring, .. }, Vertex::Assoc(_)) => {
                let colors = coloring.get_or_init(|| self.try_two_color());
                match colors {
                    Some(colors) => Ok(colors[self.encode(v)? as usize]),
                    None => Err(Error::NotBipartite {
                        witness: format!("the rotation graph on {} nodes", self.n().unwrap()),
                    }),
                }
            }
            _ => unreachable!("validated"),
        }
    }

    /// BFS 2-coloring attempt over the whole (desk-scale) graph.
    fn try_two_color(&self) -> Option<Vec<Parity>> {
        let count = self.vertex_count as usize;
        let mut color = vec![None::<Parity>; count];
        for start in 0..count {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(Parity::Even);
            let mut queue = std::collections::VecDeque::from([start as u64]);
            while let Some(code) = queue.pop_front() {
                let here = color[code as usize].expect("colored before push");
                let v = self.decode(code).expect("in range");
                for (nb, _) in self.neighbors(&v).expect("valid vertex") {
                    let nb_code = self.encode(&nb).expect("valid vertex") as usize;
                    match color[nb_code] {
                        None => {
                            color[nb_code] = Some(here.xor(Parity::Odd));
                            queue.push_back(nb_code as u64);
                        }
                        Some(c) if c == here => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.expect("all visited")).collect())
    }

    /// Iterate all vertices in code order, decoding one at a time.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.vertex_count).map(move |code| self.decode(code).expect("in range"))
    }

    /// Iterate all edges as `(u, v, label)` with `encode(u) < encode(v)`,
    /// ordered by `(code(u), label)`.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex, EdgeLabel)> + '_ {
        (0..self.vertex_count).flat_map(move |code| {
            let u = self.decode(code).expect("in range");
            let neighbors = self.neighbors(&u).expect("valid vertex");
            neighbors
                .into_iter()
                .filter_map(move |(w, label)| {
                    let wc = self.encode(&w).expect("valid vertex");
                    (wc > code).then_some((self.decode(code).expect("in range"), w, label))
                })
        })
    }
}

/// Row `n` of the inversion-number triangle: entry `k` counts permutations
/// of `n` letters with exactly `k` inversions.
pub fn mahonian_row(n: usize) -> Vec<u64> {
    let mut row = vec![1u64];
    for j in 2..=n {
        // Multiply by (1 + q + ... + q^(j-1)) using prefix sums.
        let mut next = vec![0u64; row.len() + j - 1];
        let mut window = 0u64;
        for k in 0..next.len() {
            if k < row.len() {
                window += row[k];
            }
            if k >= j && k - j < row.len() {
                window -= row[k - j];
            }
            next[k] = window;
        }
        row = next;
    }
    row
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{BTreeMap, BTreeSet};

    #[test]
    fn perm_handle_counts() {
        let g = GraphHandle::perm(4).unwrap();
        assert_eq!(g.vertex_count(), 24);
        assert_eq!(g.edge_count(), 36);
        assert_eq!(g.degree(), 3);
        let g6 = GraphHandle::perm(6).unwrap();
        assert_eq!(g6.vertex_count(), 720);
        assert_eq!(g6.edge_count(), 1800);
    }

    #[test]
    fn cube_handle_counts() {
        let g = GraphHandle::cube(4).unwrap();
        assert_eq!(g.vertex_count(), 16);
        assert_eq!(g.edge_count(), 32);
        assert_eq!(g.degree(), 4);
    }

    #[test]
    fn assoc_handle_counts_match_reference() {
        for &(n, v, e) in ASSOC_REFERENCE_COUNTS {
            let g = GraphHandle::assoc(n).unwrap();
            assert_eq!(g.vertex_count(), v);
            assert_eq!(g.edge_count(), e);
        }
    }

    #[test]
    fn product_handle_counts_and_sorting() {
        let g = GraphHandle::product(&[2, 4]).unwrap();
        assert_eq!(g.spec().unwrap(), &[4, 2]);
        assert_eq!(g.vertex_count(), 48);
        assert_eq!(g.degree(), 4);
        assert_eq!(g.edge_count(), 96);
        assert!(GraphHandle::product(&[]).is_err());
        assert!(GraphHandle::product(&[1, 3]).is_err());
    }

    #[test]
    fn product_of_single_factor_matches_perm() {
        let p = GraphHandle::perm(4).unwrap();
        let q = GraphHandle::product(&[4]).unwrap();
        assert_eq!(p.vertex_count(), q.vertex_count());
        assert_eq!(p.edge_count(), q.edge_count());
        for code in 0..p.vertex_count() {
            let pv = p.decode(code).unwrap();
            let qv = q.decode(code).unwrap();
            let (Vertex::Perm(pw), Vertex::Product(qparts)) = (&pv, &qv) else {
                panic!("wrong vertex kinds");
            };
            assert_eq!(pw, &qparts[0]);
            let pn: BTreeSet<u64> = p
                .neighbors(&pv)
                .unwrap()
                .iter()
                .map(|(w, _)| p.encode(w).unwrap())
                .collect();
            let qn: BTreeSet<u64> = q
                .neighbors(&qv)
                .unwrap()
                .iter()
                .map(|(w, _)| q.encode(w).unwrap())
                .collect();
            assert_eq!(pn, qn);
        }
    }

    #[test]
    fn codec_roundtrip_all_families() {
        let handles = [
            GraphHandle::perm(5).unwrap(),
            GraphHandle::cube(6).unwrap(),
            GraphHandle::assoc(5).unwrap(),
            GraphHandle::product(&[3, 2, 2]).unwrap(),
        ];
        for g in &handles {
            for code in 0..g.vertex_count() {
                let v = g.decode(code).unwrap();
                assert_eq!(g.encode(&v).unwrap(), code);
                let text = v.to_string();
                assert_eq!(g.parse_vertex(&text).unwrap(), v);
            }
            assert!(g.decode(g.vertex_count()).is_err());
        }
    }

    #[test]
    fn neighbor_relation_is_symmetric_and_labels_apply() {
        let handles = [
            GraphHandle::perm(4).unwrap(),
            GraphHandle::cube(4).unwrap(),
            GraphHandle::assoc(4).unwrap(),
            GraphHandle::product(&[3, 2]).unwrap(),
        ];
        for g in &handles {
            for v in g.vertices() {
                let nbs = g.neighbors(&v).unwrap();
                assert_eq!(nbs.len(), g.degree(), "regularity at {v}");
                let mut labels: Vec<_> = nbs.iter().map(|(_, l)| *l).collect();
                let mut sorted = labels.clone();
                sorted.sort();
                assert_eq!(labels, sorted, "labels ascending at {v}");
                labels.dedup();
                assert_eq!(labels.len(), g.degree(), "labels distinct at {v}");
                for (w, label) in &nbs {
                    assert_ne!(w, &v, "no self loops");
                    assert_eq!(&g.apply_label(&v, label).unwrap(), w);
                    assert_eq!(&g.apply_label(w, label).unwrap(), &v);
                    assert!(
                        g.neighbors(w).unwrap().iter().any(|(x, l)| x == &v && l == label),
                        "symmetry of {v} -- {w}"
                    );
                }
            }
        }
    }

    #[test]
    fn edge_stream_counts_and_handshake() {
        for g in [
            GraphHandle::perm(4).unwrap(),
            GraphHandle::cube(5).unwrap(),
            GraphHandle::assoc(5).unwrap(),
            GraphHandle::product(&[3, 3]).unwrap(),
        ] {
            let edges: Vec<_> = g.edges().collect();
            assert_eq!(edges.len() as u64, g.edge_count());
            let distinct: BTreeSet<(u64, u64)> = edges
                .iter()
                .map(|(u, v, _)| (g.encode(u).unwrap(), g.encode(v).unwrap()))
                .collect();
            assert_eq!(distinct.len() as u64, g.edge_count(), "no duplicates");
            assert!(distinct.iter().all(|&(u, v)| u < v));
        }
    }

    #[test]
    fn perm_levels_are_inversions_with_mahonian_sizes() {
        let g = GraphHandle::perm(4).unwrap();
        assert_eq!(g.level_sizes().unwrap(), vec![1, 3, 5, 6, 5, 3, 1]);
        assert_eq!(GraphHandle::perm(3).unwrap().level_sizes().unwrap(), vec![1, 2, 2, 1]);
        let mut observed = BTreeMap::new();
        for v in g.vertices() {
            *observed.entry(g.level(&v).unwrap()).or_insert(0u64) += 1;
        }
        let sizes = g.level_sizes().unwrap();
        for (k, &count) in sizes.iter().enumerate() {
            assert_eq!(observed.get(&(k as u64)).copied().unwrap_or(0), count);
        }
        assert_eq!(g.max_level().unwrap(), 6);
    }

    #[test]
    fn mahonian_maxima_match_known_values() {
        // Largest number of equal-inversion permutations, n = 1..=8.
        let expected = [1u64, 1, 2, 6, 22, 101, 573, 3836];
        for (i, &want) in expected.iter().enumerate() {
            let row = mahonian_row(i + 1);
            assert_eq!(row.iter().copied().max().unwrap(), want, "n = {}", i + 1);
            assert_eq!(row.iter().sum::<u64>(), factorial(i + 1));
        }
    }

    #[test]
    fn cube_levels_are_weights_with_binomial_sizes() {
        let g = GraphHandle::cube(10).unwrap();
        let sizes = g.level_sizes().unwrap();
        assert_eq!(sizes[5], 252);
        assert_eq!(sizes.iter().sum::<u64>(), 1024);
        let v = g.parse_vertex("1010010011").unwrap();
        assert_eq!(g.level(&v).unwrap(), 5);
    }

    #[test]
    fn level_unsupported_for_assoc_and_product() {
        let g = GraphHandle::assoc(3).unwrap();
        let v = g.decode(0).unwrap();
        assert!(matches!(g.level(&v), Err(Error::Unsupported { .. })));
        assert!(g.level_sizes().is_err());
        let g = GraphHandle::product(&[3, 2]).unwrap();
        let v = g.decode(0).unwrap();
        assert!(matches!(g.level(&v), Err(Error::Unsupported { .. })));
    }

    #[test]
    fn bipartition_colors_are_proper_where_defined() {
        for g in [
            GraphHandle::perm(4).unwrap(),
            GraphHandle::cube(4).unwrap(),
            GraphHandle::product(&[3, 2, 2]).unwrap(),
            GraphHandle::assoc(2).unwrap(),
        ] {
            for v in g.vertices() {
                let c = g.bipartition_color(&v).unwrap();
                for (w, _) in g.neighbors(&v).unwrap() {
                    assert_ne!(c, g.bipartition_color(&w).unwrap(), "edge {v} -- {w}");
                }
            }
        }
    }

    #[test]
    fn rotation_graph_has_odd_cycles_beyond_two_nodes() {
        // Five triangulations of the pentagon form a 5-cycle, so there is no
        // 2-coloring; the handle must say so rather than hand out colors.
        let g = GraphHandle::assoc(3).unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.degree(), 2);
        let v = g.decode(0).unwrap();
        assert!(matches!(
            g.bipartition_color(&v),
            Err(Error::NotBipartite { .. })
        ));
        for n in [4, 5] {
            let g = GraphHandle::assoc(n).unwrap();
            let v = g.decode(0).unwrap();
            assert!(g.bipartition_color(&v).is_err(), "n = {n}");
        }
    }

    #[test]
    fn transposition_commutation_cycles() {
        // tau_i tau_j repeated twice closes a 4-cycle exactly when the
        // positions are non-adjacent; adjacent positions need three rounds.
        let g = GraphHandle::perm(5).unwrap();
        for v in g.vertices() {
            for i in 1..=4usize {
                for j in 1..=4usize {
                    if i == j {
                        continue;
                    }
                    let mut w = v.clone();
                    for step in 0..4 {
                        let label = if step % 2 == 0 { i } else { j };
                        w = g.apply_label(&w, &EdgeLabel::Tau(label)).unwrap();
                    }
                    if i.abs_diff(j) > 1 {
                        assert_eq!(w, v, "4-cycle for |i-j| > 1");
                    } else {
                        assert_ne!(w, v, "no 4-cycle for adjacent positions");
                        for step in 4..6 {
                            let label = if step % 2 == 0 { i } else { j };
                            w = g.apply_label(&w, &EdgeLabel::Tau(label)).unwrap();
                        }
                        assert_eq!(w, v, "6-cycle for |i-j| = 1");
                    }
                }
            }
        }
    }

    #[test]
    fn cube_neighbors_of_origin() {
        let g = GraphHandle::cube(3).unwrap();
        let v = g.parse_vertex("000").unwrap();
        let nbs: Vec<String> = g
            .neighbors(&v)
            .unwrap()
            .iter()
            .map(|(w, l)| format!("{w} {l}"))
            .collect();
        assert_eq!(nbs, vec!["100 bit=1", "010 bit=2", "001 bit=3"]);
    }
}
