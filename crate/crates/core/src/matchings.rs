//! Constructive maximal matchings answered by local queries.
//!
//! The permutahedron matchings come from two reference tables on four
//! letters, transported into each fixed-suffix copy of Σ₄ inside Σₙ by a
//! sign rule, so a single query costs time linear in the word length. The
//! hypercube matching follows symmetric chains with a mod-3 cut pattern,
//! and the product combiner modulates the first factor's variant by the
//! bipartition colors of the remaining coordinates.

use crate::graphs::{BitWord, EdgeLabel, Family, GraphHandle, Vertex};
use crate::perm::{suffix_split, Parity, Permutation, Sign};
use crate::{Error, Result};
use rayon::prelude::*;
use std::collections::BTreeSet;
use std::sync::OnceLock;

/// Which of the two global matchings to query.
///
/// Both variants are maximal; they differ by which reference table each
/// suffix class receives, and their exposed sets are disjoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Bullet,
    Circ,
}

impl Variant {
    /// The other variant.
    pub fn flip(self) -> Variant {
        match self {
            Variant::Bullet => Variant::Circ,
            Variant::Circ => Variant::Bullet,
        }
    }

    /// Flip when the parity is odd; used by the product combiner.
    pub fn adjusted_by(self, p: Parity) -> Variant {
        match p {
            Parity::Even => self,
            Parity::Odd => self.flip(),
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Variant::Bullet => write!(f, "bullet"),
            Variant::Circ => write!(f, "circ"),
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Variant> {
        match s {
            "bullet" => Ok(Variant::Bullet),
            "circ" => Ok(Variant::Circ),
            other => Err(Error::Parse(format!(
                "unknown variant {other:?} (expected bullet or circ)"
            ))),
        }
    }
}

/// The two reference matchings on four letters, keyed by sign.
const PLUS_EDGES: [(&str, &str); 8] = [
    ("2134", "2314"),
    ("3241", "2341"),
    ("3412", "3142"),
    ("2413", "4213"),
    ("4132", "1432"),
    ("1243", "1423"),
    ("3124", "1324"),
    ("4321", "4231"),
];
const PLUS_EXPOSED: [&str; 8] = [
    "4123", "3214", "4312", "3421", "1234", "2143", "1342", "2431",
];
const MINUS_EDGES: [(&str, &str); 8] = [
    ("1324", "1234"),
    ("2143", "2413"),
    ("4231", "2431"),
    ("3214", "2314"),
    ("4123", "1423"),
    ("3142", "1342"),
    ("4312", "4132"),
    ("3241", "3421"),
];
const MINUS_EXPOSED: [&str; 8] = [
    "1432", "2341", "3412", "4321", "1243", "2134", "3124", "4213",
];

/// The plus/minus reference matchings on four letters, with their exposed
/// sets and a rank-indexed partner lookup.
///
/// The tables are data; their claimed properties (eight edges each, maximal,
/// complementary exposed sets, disjoint between signs) are re-checked by
/// [`BaseTables::validate`] rather than trusted.
pub struct BaseTables {
    plus_edges: Vec<(Permutation, Permutation)>,
    minus_edges: Vec<(Permutation, Permutation)>,
    plus_exposed: Vec<Permutation>,
    minus_exposed: Vec<Permutation>,
    /// `partner[rank]` is `Some((partner_rank, swap_position))` when the
    /// rank-th four-letter word is matched.
    plus_partner: [Option<(u8, u8)>; 24],
    minus_partner: [Option<(u8, u8)>; 24],
}

impl BaseTables {
    /// The shared, validated instance.
    pub fn standard() -> &'static BaseTables {
        static TABLES: OnceLock<BaseTables> = OnceLock::new();
        TABLES.get_or_init(|| {
            let tables = BaseTables::build().expect("reference tables parse");
            tables.validate().expect("reference tables are maximal matchings");
            tables
        })
    }

    fn build() -> Result<BaseTables> {
        let parse_pairs = |pairs: &[(&str, &str)]| -> Result<Vec<(Permutation, Permutation)>> {
            pairs
                .iter()
                .map(|(a, b)| Ok((Permutation::parse(a)?, Permutation::parse(b)?)))
                .collect()
        };
        let parse_words = |words: &[&str]| -> Result<Vec<Permutation>> {
            words.iter().map(|w| Permutation::parse(w)).collect()
        };
        let plus_edges = parse_pairs(&PLUS_EDGES)?;
        let minus_edges = parse_pairs(&MINUS_EDGES)?;
        let plus_partner = Self::index(&plus_edges)?;
        let minus_partner = Self::index(&minus_edges)?;
        Ok(BaseTables {
            plus_edges,
            minus_edges,
            plus_exposed: parse_words(&PLUS_EXPOSED)?,
            minus_exposed: parse_words(&MINUS_EXPOSED)?,
            plus_partner,
            minus_partner,
        })
    }

    fn index(edges: &[(Permutation, Permutation)]) -> Result<[Option<(u8, u8)>; 24]> {
        let mut partner = [None; 24];
        for (a, b) in edges {
            let swap = Self::swap_position(a, b)?;
            let (ra, rb) = (a.lex_rank()? as u8, b.lex_rank()? as u8);
            for (from, to) in [(ra, rb), (rb, ra)] {
                if partner[from as usize].is_some() {
                    return Err(Error::InvalidSpec(format!(
                        "reference table covers word of rank {from} twice"
                    )));
                }
                partner[from as usize] = Some((to, swap as u8));
            }
        }
        Ok(partner)
    }

    /// The position of the adjacent swap turning `a` into `b`, or an error
    /// if the two words do not form an edge.
    fn swap_position(a: &Permutation, b: &Permutation) -> Result<usize> {
        for i in 1..a.n() {
            if a.apply_transposition(i)? == *b {
                return Ok(i);
            }
        }
        Err(Error::NotAnEdge {
            u: a.to_string(),
            v: b.to_string(),
        })
    }

    /// The edge list for one sign.
    pub fn edges(&self, sign: Sign) -> &[(Permutation, Permutation)] {
        match sign {
            Sign::Plus => &self.plus_edges,
            Sign::Minus => &self.minus_edges,
        }
    }

    /// The exposed vertices for one sign.
    pub fn exposed(&self, sign: Sign) -> &[Permutation] {
        match sign {
            Sign::Plus => &self.plus_exposed,
            Sign::Minus => &self.minus_exposed,
        }
    }

    /// The matched partner of a four-letter word under one sign, with the
    /// swap position, or `None` when the word is exposed there.
    pub fn partner_of(&self, sign: Sign, pi: &Permutation) -> Result<Option<(Permutation, usize)>> {
        if pi.n() != 4 {
            return Err(Error::InvalidPermutation(format!(
                "reference tables hold four-letter words, got {pi}"
            )));
        }
        let table = match sign {
            Sign::Plus => &self.plus_partner,
            Sign::Minus => &self.minus_partner,
        };
        Ok(match table[pi.lex_rank()? as usize] {
            None => None,
            Some((rank, swap)) => Some((Permutation::lex_unrank(4, rank as u64)?, swap as usize)),
        })
    }

    /// Re-derive every claimed property of the tables: eight edges per sign
    /// forming a maximal matching whose exposed set is exactly the listed
    /// one, and disjointness of the two exposed sets.
    pub fn validate(&self) -> Result<()> {
        let g = GraphHandle::perm(4)?;
        for sign in [Sign::Plus, Sign::Minus] {
            let edges = self.edges(sign);
            if edges.len() != 8 {
                return Err(Error::InvalidSpec(format!(
                    "sign {sign:?}: expected 8 edges, found {}",
                    edges.len()
                )));
            }
            let mut covered = BTreeSet::new();
            for (a, b) in edges {
                Self::swap_position(a, b)?;
                for w in [a, b] {
                    if !covered.insert(w.clone()) {
                        return Err(Error::InvalidSpec(format!(
                            "sign {sign:?}: {w} lies on two edges"
                        )));
                    }
                }
            }
            let listed: BTreeSet<_> = self.exposed(sign).iter().cloned().collect();
            let derived: BTreeSet<_> = g
                .vertices()
                .filter_map(|v| match v {
                    Vertex::Perm(p) if !covered.contains(&p) => Some(p),
                    _ => None,
                })
                .collect();
            if listed != derived {
                return Err(Error::InvalidSpec(format!(
                    "sign {sign:?}: listed exposed set disagrees with the edge list"
                )));
            }
            for e in &derived {
                for i in 1..4 {
                    let nb = e.apply_transposition(i)?;
                    if derived.contains(&nb) {
                        return Err(Error::InvalidSpec(format!(
                            "sign {sign:?}: exposed words {e} and {nb} are adjacent, \
                             so the table is not maximal"
                        )));
                    }
                }
            }
        }
        let plus: BTreeSet<_> = self.plus_exposed.iter().collect();
        if self.minus_exposed.iter().any(|w| plus.contains(w)) {
            return Err(Error::InvalidSpec(
                "the two exposed sets intersect".into(),
            ));
        }
        Ok(())
    }
}

/// The matched neighbor of a permutation under one variant, together with
/// the swap position, or `None` when the word is exposed.
///
/// Words of length at least four are split into their first four letters
/// and the remaining suffix; the four-letter part is standardized, looked
/// up in the reference table selected by the suffix's sign, and the
/// resulting adjacent swap (always at position ≤ 3) is applied to the full
/// word. Everything is a constant number of passes over the word, so a
/// query runs in time linear in the length and never touches the rest of
/// the graph.
pub fn perm_matched_neighbor(
    v: &Permutation,
    variant: Variant,
) -> Result<Option<(Permutation, usize)>> {
    match v.n() {
        0 | 1 => Err(Error::InvalidSpec(format!(
            "matchings need at least two letters, got {v}"
        ))),
        2 => Ok(Some((v.apply_transposition(1)?, 1))),
        3 => Ok(three_letter_partner(v, variant)?
            .map(|swap| (v.apply_transposition(swap).expect("swap in range"), swap))),
        _ => {
            let suffix = suffix_split(v)?;
            let sbar = suffix.complement();
            let mut word = [0u32; 4];
            for (i, slot) in word.iter_mut().enumerate() {
                let letter = v.letter(i + 1);
                *slot = 1 + sbar.iter().filter(|&&c| c < letter).count() as u32;
            }
            let pi = Permutation::new(word.to_vec())?;
            let sign = match variant {
                Variant::Bullet => suffix.epsilon(),
                Variant::Circ => suffix.epsilon().flip(),
            };
            Ok(
                match BaseTables::standard().partner_of(sign, &pi)? {
                    None => None,
                    Some((_, swap)) => Some((v.apply_transposition(swap)?, swap)),
                },
            )
        }
    }
}

/// Hand-picked tables for three letters, where the suffix construction does
/// not apply: the six words form a 6-cycle, and each variant matches two
/// opposite edges, leaving two antipodal words exposed. The two exposed
/// sets are disjoint, which the product combiner relies on.
fn three_letter_partner(v: &Permutation, variant: Variant) -> Result<Option<usize>> {
    let swap = match (variant, v.as_slice()) {
        (Variant::Bullet, [1, 2, 3]) | (Variant::Bullet, [2, 1, 3]) => Some(1),
        (Variant::Bullet, [3, 1, 2]) | (Variant::Bullet, [3, 2, 1]) => Some(2),
        (Variant::Bullet, [2, 3, 1]) | (Variant::Bullet, [1, 3, 2]) => None,
        (Variant::Circ, [2, 1, 3]) | (Variant::Circ, [2, 3, 1]) => Some(2),
        (Variant::Circ, [1, 3, 2]) | (Variant::Circ, [3, 1, 2]) => Some(1),
        (Variant::Circ, [1, 2, 3]) | (Variant::Circ, [3, 2, 1]) => None,
        _ => {
            return Err(Error::InvalidPermutation(format!(
                "not a three-letter word: {v}"
            )))
        }
    };
    Ok(swap)
}

/// Largest hypercube dimension for which the chain matching table is built;
/// the table holds one partner entry per vertex.
pub const MAX_CUBE_TABLE_N: usize = 20;

/// A maximal matching of the hypercube built from symmetric chains.
///
/// Each vertex determines its chain locally by the bracket rule; along every
/// chain, the step from level `k` to `k + 1` is matched exactly when
/// `k ≡ p (mod 3)` for a single global residue `p` chosen to minimize the
/// total size of the levels congruent to `p`. The leftovers are matched
/// greedily in ascending vertex order, smallest flip position first, which
/// makes the whole table deterministic.
pub struct CubeMatching {
    n: usize,
    residue: usize,
    /// `partner[code]` is the matched code, or `EXPOSED`.
    partner: Vec<u32>,
}

const EXPOSED: u32 = u32::MAX;

/// The residue `p ∈ {1, 2, 3}` minimizing the number of vertices at levels
/// `k ≡ p (mod 3)` of the `n`-cube, smallest residue on ties.
pub fn cube_residue(n: usize) -> usize {
    let sizes = GraphHandle::cube(n)
        .expect("dimension validated by caller")
        .level_sizes()
        .expect("cube has levels");
    crate::layered::residue_cut(&sizes)
}

impl CubeMatching {
    /// Build the table for dimension `n`.
    pub fn new(n: usize) -> Result<CubeMatching> {
        if n == 0 || n > MAX_CUBE_TABLE_N {
            return Err(Error::CapExceeded {
                needed: 1u64.checked_shl(n as u32).unwrap_or(u64::MAX),
                cap: 1 << MAX_CUBE_TABLE_N,
            });
        }
        let residue = cube_residue(n);
        let size = 1usize << n;
        let mut partner = vec![EXPOSED; size];
        for code in 0..size as u64 {
            let word = BitWord::new(n, code)?;
            let chain = crate::layered::scd_chain(&word);
            if chain[0] != word {
                continue; // handled when the chain's bottom vertex comes up
            }
            let bottom = word.weight() as usize;
            for (offset, pair) in chain.windows(2).enumerate() {
                if (bottom + offset) % 3 == residue % 3 {
                    let a = pair[0].bits() as usize;
                    let b = pair[1].bits() as usize;
                    partner[a] = b as u32;
                    partner[b] = a as u32;
                }
            }
        }
        for code in 0..size {
            if partner[code] != EXPOSED {
                continue;
            }
            for i in 1..=n {
                let nb = code ^ (1 << (n - i));
                if partner[nb] == EXPOSED {
                    partner[code] = nb as u32;
                    partner[nb] = code as u32;
                    break;
                }
            }
        }
        Ok(CubeMatching {
            n,
            residue,
            partner,
        })
    }

    /// The cube dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The chosen cut residue.
    pub fn residue(&self) -> usize {
        self.residue
    }

    /// Number of matched pairs.
    pub fn size(&self) -> u64 {
        self.partner.iter().filter(|&&p| p != EXPOSED).count() as u64 / 2
    }

    /// The matched neighbor and its flip position, or `None` when exposed.
    pub fn matched_neighbor(&self, v: &BitWord) -> Result<Option<(BitWord, usize)>> {
        if v.n() != self.n {
            return Err(Error::InvalidVertex {
                family: "cube".into(),
                reason: format!("{v} has {} bits, table holds {}", v.n(), self.n),
            });
        }
        let p = self.partner[v.bits() as usize];
        if p == EXPOSED {
            return Ok(None);
        }
        let w = BitWord::new(self.n, p as u64)?;
        let flip = self.n - (v.bits() ^ w.bits()).trailing_zeros() as usize;
        Ok(Some((w, flip)))
    }
}

/// Free-function form of [`CubeMatching::matched_neighbor`].
pub fn cube_matched_neighbor(
    table: &CubeMatching,
    v: &BitWord,
) -> Result<Option<(BitWord, usize)>> {
    table.matched_neighbor(v)
}

/// The matched neighbor in a product of permutahedra.
///
/// Only the first coordinate ever moves: the variant queried there is the
/// requested one, flipped once for every odd-parity later coordinate. When
/// every factor has two letters the product is a hypercube in disguise and
/// the chain matching is used instead (a one-off table per call — reuse a
/// [`QueryMatching`] for bulk work).
pub fn product_matched_neighbor(
    spec: &[usize],
    v: &[Permutation],
    variant: Variant,
) -> Result<Option<(Vec<Permutation>, EdgeLabel)>> {
    let g = GraphHandle::product(spec)?;
    let qm = QueryMatching::new(&g, variant)?;
    match qm.matched_neighbor(&Vertex::Product(v.to_vec()))? {
        None => Ok(None),
        Some((Vertex::Product(parts), label)) => Ok(Some((parts, label))),
        Some(_) => unreachable!("product queries return product vertices"),
    }
}

enum Rule {
    Perm {
        n: usize,
        variant: Variant,
    },
    Cube {
        table: CubeMatching,
    },
    /// First factor has at least three letters.
    Product {
        factors: Vec<usize>,
        variant: Variant,
    },
    /// Every factor has two letters; the product is a hypercube.
    ProductCube {
        factors: usize,
        table: CubeMatching,
    },
}

/// A matching answered one vertex at a time, never stored whole.
pub struct QueryMatching {
    rule: Rule,
}

impl QueryMatching {
    /// The matching of the given graph under the given variant. The
    /// hypercube has a single construction and ignores the variant; the
    /// rotation family has no constructive matching here.
    pub fn new(g: &GraphHandle, variant: Variant) -> Result<QueryMatching> {
        let rule = match g.family() {
            Family::Perm => {
                let n = g.n().expect("perm has n");
                if n < 2 {
                    return Err(Error::InvalidSpec(
                        "matchings need at least two letters".into(),
                    ));
                }
                Rule::Perm { n, variant }
            }
            Family::Cube => Rule::Cube {
                table: CubeMatching::new(g.n().expect("cube has n"))?,
            },
            Family::Product => {
                let factors = g.spec().expect("product has factors").to_vec();
                if factors[0] >= 3 {
                    Rule::Product { factors, variant }
                } else {
                    Rule::ProductCube {
                        factors: factors.len(),
                        table: CubeMatching::new(factors.len())?,
                    }
                }
            }
            Family::Assoc => {
                return Err(Error::Unsupported {
                    op: "constructive matching",
                    family: "assoc".to_string(),
                })
            }
        };
        Ok(QueryMatching { rule })
    }

    /// The matched neighbor with its edge label, or `None` when exposed.
    pub fn matched_neighbor(&self, v: &Vertex) -> Result<Option<(Vertex, EdgeLabel)>> {
        match (&self.rule, v) {
            (Rule::Perm { n, variant }, Vertex::Perm(p)) => {
                if p.n() != *n {
                    return Err(Error::InvalidVertex {
                        family: "perm".into(),
                        reason: format!("{p} has {} letters, expected {n}", p.n()),
                    });
                }
                Ok(perm_matched_neighbor(p, *variant)?
                    .map(|(w, swap)| (Vertex::Perm(w), EdgeLabel::Tau(swap))))
            }
            (Rule::Cube { table }, Vertex::Cube(b)) => Ok(table
                .matched_neighbor(b)?
                .map(|(w, flip)| (Vertex::Cube(w), EdgeLabel::Bit(flip)))),
            (Rule::Product { factors, variant }, Vertex::Product(parts)) => {
                if parts.len() != factors.len()
                    || parts.iter().zip(factors).any(|(p, &f)| p.n() != f)
                {
                    return Err(Error::InvalidVertex {
                        family: "product".into(),
                        reason: format!("{v} does not fit the factor list {factors:?}"),
                    });
                }
                let tail_parity = parts[1..]
                    .iter()
                    .map(|p| p.parity())
                    .fold(Parity::Even, Parity::xor);
                let effective = variant.adjusted_by(tail_parity);
                Ok(match perm_matched_neighbor(&parts[0], effective)? {
                    None => None,
                    Some((w, swap)) => {
                        let mut next = parts.clone();
                        next[0] = w;
                        Some((
                            Vertex::Product(next),
                            EdgeLabel::Factor {
                                factor: 1,
                                tau: swap,
                            },
                        ))
                    }
                })
            }
            (Rule::ProductCube { factors, table }, Vertex::Product(parts)) => {
                if parts.len() != *factors || parts.iter().any(|p| p.n() != 2) {
                    return Err(Error::InvalidVertex {
                        family: "product".into(),
                        reason: format!("{v} is not a tuple of {factors} two-letter words"),
                    });
                }
                let mut bits = 0u64;
                for p in parts {
                    bits = (bits << 1) | p.lex_rank()?;
                }
                let word = BitWord::new(*factors, bits)?;
                Ok(match table.matched_neighbor(&word)? {
                    None => None,
                    Some((w, flip)) => {
                        let mut next = parts.clone();
                        next[flip - 1] = next[flip - 1].apply_transposition(1)?;
                        debug_assert_eq!(next[flip - 1].lex_rank()?, w.bits() >> (*factors - flip) & 1);
                        Some((
                            Vertex::Product(next),
                            EdgeLabel::Factor {
                                factor: flip,
                                tau: 1,
                            },
                        ))
                    }
                })
            }
            _ => Err(Error::InvalidVertex {
                family: "matching".into(),
                reason: format!("{v} does not belong to this matching's graph"),
            }),
        }
    }
}

/// A matching written out in full: edge code pairs, exposed codes, size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaterializedMatching {
    /// Code pairs with the smaller code first, ascending.
    pub edges: Vec<(u64, u64)>,
    /// Exposed vertex codes, ascending.
    pub exposed: Vec<u64>,
}

impl MaterializedMatching {
    /// Number of edges.
    pub fn size(&self) -> u64 {
        self.edges.len() as u64
    }
}

/// Write a query matching out in full by scanning every vertex code.
///
/// Fails when the graph exceeds `cap` vertices. Each query's answer is
/// cross-checked: the reported neighbor must map back (symmetry) and must
/// actually lie across the reported edge label. The scan is split across
/// the current thread pool; the result is assembled in code order and is
/// identical to a sequential run.
pub fn materialize(
    g: &GraphHandle,
    qm: &QueryMatching,
    cap: u64,
) -> Result<MaterializedMatching> {
    let count = g.vertex_count();
    if count > cap {
        return Err(Error::CapExceeded { needed: count, cap });
    }
    let partners: Vec<Option<u64>> = (0..count)
        .into_par_iter()
        .map(|code| -> Result<Option<u64>> {
            let v = g.decode(code)?;
            match qm.matched_neighbor(&v)? {
                None => Ok(None),
                Some((w, label)) => {
                    if g.apply_label(&v, &label)? != w {
                        return Err(Error::NotAnEdge {
                            u: v.to_string(),
                            v: w.to_string(),
                        });
                    }
                    match qm.matched_neighbor(&w)? {
                        Some((back, _)) if back == v => Ok(Some(g.encode(&w)?)),
                        _ => Err(Error::SymmetryViolation {
                            vertex: v.to_string(),
                            partner: w.to_string(),
                        }),
                    }
                }
            }
        })
        .collect::<Result<_>>()?;
    let mut edges = Vec::new();
    let mut exposed = Vec::new();
    for (code, partner) in partners.iter().enumerate() {
        let code = code as u64;
        match *partner {
            None => exposed.push(code),
            Some(w) if w > code => edges.push((code, w)),
            Some(w) if w == code => {
                return Err(Error::SymmetryViolation {
                    vertex: g.decode(code)?.to_string(),
                    partner: g.decode(code)?.to_string(),
                })
            }
            Some(_) => {} // recorded when the smaller endpoint came up
        }
    }
    Ok(MaterializedMatching { edges, exposed })
}

/// Check that the code pairs are edges of `g` (an error if one is not) and
/// that no vertex lies on two of them.
pub fn verify_matching(g: &GraphHandle, edges: &[(u64, u64)]) -> Result<bool> {
    let mut seen = BTreeSet::new();
    for &(a, b) in edges {
        let u = g.decode(a)?;
        let v = g.decode(b)?;
        if a == b || !g.neighbors(&u)?.iter().any(|(w, _)| *w == v) {
            return Err(Error::NotAnEdge {
                u: u.to_string(),
                v: v.to_string(),
            });
        }
        if !seen.insert(a) || !seen.insert(b) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Check maximality: a valid matching whose exposed set (the complement of
/// the covered codes) spans no edge of `g`.
pub fn verify_maximal(g: &GraphHandle, edges: &[(u64, u64)]) -> Result<bool> {
    if !verify_matching(g, edges)? {
        return Ok(false);
    }
    let covered: BTreeSet<u64> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    for code in 0..g.vertex_count() {
        if covered.contains(&code) {
            continue;
        }
        let v = g.decode(code)?;
        for (w, _) in g.neighbors(&v)? {
            if !covered.contains(&g.encode(&w)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Full verdict for a set of code pairs against a graph.
#[derive(Debug, Clone, serde::Serialize)]
pub struct VerifyReport {
    pub is_matching: bool,
    pub is_maximal: bool,
    pub size: u64,
    pub exposed_count: u64,
}

/// Verdict record: matching / maximal flags plus size and exposure counts.
pub fn verify_report(g: &GraphHandle, edges: &[(u64, u64)]) -> Result<VerifyReport> {
    let is_matching = verify_matching(g, edges)?;
    let is_maximal = is_matching && verify_maximal(g, edges)?;
    let covered = if is_matching { 2 * edges.len() as u64 } else { 0 };
    Ok(VerifyReport {
        is_matching,
        is_maximal,
        size: edges.len() as u64,
        exposed_count: if is_matching {
            g.vertex_count() - covered
        } else {
            0
        },
    })
}

/// `true` iff the two matchings' exposed sets are disjoint, so every vertex
/// is covered by one of the pair.
pub fn verify_covering_pair(a: &MaterializedMatching, b: &MaterializedMatching) -> bool {
    let set: BTreeSet<u64> = a.exposed.iter().copied().collect();
    !b.exposed.iter().any(|code| set.contains(code))
}

/// Maximality check that never materializes: along every edge of `g`, at
/// least one endpoint must be matched, and every reported partner must map
/// back. Suitable for graphs too large to hold as edge lists.
pub fn verify_streaming_maximal(g: &GraphHandle, qm: &QueryMatching) -> Result<bool> {
    (0..g.vertex_count())
        .into_par_iter()
        .map(|code| -> Result<bool> {
            let v = g.decode(code)?;
            match qm.matched_neighbor(&v)? {
                Some((w, _)) => match qm.matched_neighbor(&w)? {
                    Some((back, _)) if back == v => Ok(true),
                    _ => Err(Error::SymmetryViolation {
                        vertex: v.to_string(),
                        partner: w.to_string(),
                    }),
                },
                None => {
                    for (w, _) in g.neighbors(&v)? {
                        if qm.matched_neighbor(&w)?.is_none() {
                            return Ok(false);
                        }
                    }
                    Ok(true)
                }
            }
        })
        .try_reduce(|| true, |a, b| Ok(a && b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::factorial;

    /// Forty edges of the five-letter matching under the circ variant.
    const FIVE_LETTER_EDGES: [(&str, &str); 40] = [
        ("23451", "24351"),
        ("13542", "15342"),
        ("12453", "14253"),
        ("12534", "15234"),
        ("12345", "13245"),
        ("24531", "42531"),
        ("15432", "51432"),
        ("14523", "41523"),
        ("15324", "51324"),
        ("13425", "31425"),
        ("25341", "52341"),
        ("14352", "41352"),
        ("15243", "51243"),
        ("13254", "31254"),
        ("14235", "41235"),
        ("32541", "35241"),
        ("31452", "34152"),
        ("21543", "25143"),
        ("21354", "23154"),
        ("21435", "24135"),
        ("34251", "43251"),
        ("34512", "43512"),
        ("24153", "42153"),
        ("23514", "32514"),
        ("23145", "32145"),
        ("35421", "53421"),
        ("35142", "53142"),
        ("25413", "52413"),
        ("25134", "52134"),
        ("24315", "42315"),
        ("43521", "45321"),
        ("41532", "45132"),
        ("42513", "45213"),
        ("31524", "35124"),
        ("32415", "34215"),
        ("52431", "54231"),
        ("53412", "54312"),
        ("51423", "54123"),
        ("52314", "53214"),
        ("41325", "43125"),
    ];

    /// The forty words left exposed by that matching.
    const FIVE_LETTER_EXPOSED: [&str; 40] = [
        "12354", "13524", "21345", "23541", "31245", "34125", "41253", "43215", "51234", "53241",
        "12435", "14325", "21453", "24513", "31542", "34521", "42135", "45123", "51342", "54132",
        "12543", "14532", "21534", "25314", "32154", "35214", "42351", "45231", "52143", "54213",
        "13452", "15423", "23415", "25431", "32451", "35412", "43152", "45312", "53124", "54321",
    ];

    fn perm(word: &str) -> Permutation {
        Permutation::parse(word).unwrap()
    }

    #[test]
    fn reference_tables_validate() {
        BaseTables::standard().validate().unwrap();
    }

    #[test]
    fn reference_table_lookups() {
        let t = BaseTables::standard();
        let (partner, swap) = t.partner_of(Sign::Plus, &perm("2134")).unwrap().unwrap();
        assert_eq!((partner, swap), (perm("2314"), 2));
        assert!(t.partner_of(Sign::Plus, &perm("1234")).unwrap().is_none());
        let (partner, swap) = t.partner_of(Sign::Minus, &perm("1234")).unwrap().unwrap();
        assert_eq!((partner, swap), (perm("1324"), 2));
        assert!(t.partner_of(Sign::Minus, &perm("1432")).unwrap().is_none());
        assert!(t.partner_of(Sign::Plus, &perm("12345")).is_err());
    }

    #[test]
    fn four_letter_queries_follow_the_tables() {
        assert_eq!(
            perm_matched_neighbor(&perm("1234"), Variant::Circ).unwrap(),
            Some((perm("1324"), 2))
        );
        assert_eq!(
            perm_matched_neighbor(&perm("1234"), Variant::Bullet).unwrap(),
            None
        );
        assert_eq!(
            perm_matched_neighbor(&perm("2134"), Variant::Bullet).unwrap(),
            Some((perm("2314"), 2))
        );
    }

    #[test]
    fn five_letter_golden_example() {
        assert_eq!(
            perm_matched_neighbor(&perm("23451"), Variant::Circ).unwrap(),
            Some((perm("24351"), 2))
        );
        assert_eq!(
            perm_matched_neighbor(&perm("12354"), Variant::Circ).unwrap(),
            None
        );
    }

    #[test]
    fn five_letter_matching_equals_reference_listing() {
        let g = GraphHandle::perm(5).unwrap();
        let qm = QueryMatching::new(&g, Variant::Circ).unwrap();
        let m = materialize(&g, &qm, 1 << 20).unwrap();

        let expected_edges: BTreeSet<(u64, u64)> = FIVE_LETTER_EDGES
            .iter()
            .map(|(a, b)| {
                let (ra, rb) = (perm(a).lex_rank().unwrap(), perm(b).lex_rank().unwrap());
                (ra.min(rb), ra.max(rb))
            })
            .collect();
        let got_edges: BTreeSet<(u64, u64)> = m.edges.iter().copied().collect();
        assert_eq!(got_edges, expected_edges);

        let expected_exposed: BTreeSet<u64> = FIVE_LETTER_EXPOSED
            .iter()
            .map(|w| perm(w).lex_rank().unwrap())
            .collect();
        let got_exposed: BTreeSet<u64> = m.exposed.iter().copied().collect();
        assert_eq!(got_exposed, expected_exposed);
    }

    #[test]
    fn two_and_three_letter_tables() {
        assert_eq!(
            perm_matched_neighbor(&perm("12"), Variant::Bullet).unwrap(),
            Some((perm("21"), 1))
        );
        assert_eq!(
            perm_matched_neighbor(&perm("21"), Variant::Circ).unwrap(),
            Some((perm("12"), 1))
        );
        assert_eq!(
            perm_matched_neighbor(&perm("123"), Variant::Bullet).unwrap(),
            Some((perm("213"), 1))
        );
        assert_eq!(
            perm_matched_neighbor(&perm("231"), Variant::Bullet).unwrap(),
            None
        );
        assert_eq!(
            perm_matched_neighbor(&perm("213"), Variant::Circ).unwrap(),
            Some((perm("231"), 2))
        );
        assert_eq!(
            perm_matched_neighbor(&perm("123"), Variant::Circ).unwrap(),
            None
        );
        assert!(perm_matched_neighbor(&perm("1"), Variant::Circ).is_err());
    }

    #[test]
    fn permutahedron_matchings_have_third_size_and_are_maximal() {
        for n in 2..=6 {
            let g = GraphHandle::perm(n).unwrap();
            for variant in [Variant::Bullet, Variant::Circ] {
                let qm = QueryMatching::new(&g, variant).unwrap();
                let m = materialize(&g, &qm, 1 << 20).unwrap();
                if n >= 3 {
                    assert_eq!(m.size(), factorial(n) / 3, "n = {n}, {variant}");
                }
                assert!(verify_maximal(&g, &m.edges).unwrap(), "n = {n}, {variant}");
                assert_eq!(
                    2 * m.size() + m.exposed.len() as u64,
                    g.vertex_count()
                );
            }
        }
    }

    #[test]
    fn exposed_sets_of_the_two_variants_are_disjoint() {
        for n in 3..=6 {
            let g = GraphHandle::perm(n).unwrap();
            let bullet = materialize(
                &g,
                &QueryMatching::new(&g, Variant::Bullet).unwrap(),
                1 << 20,
            )
            .unwrap();
            let circ = materialize(
                &g,
                &QueryMatching::new(&g, Variant::Circ).unwrap(),
                1 << 20,
            )
            .unwrap();
            assert!(verify_covering_pair(&bullet, &circ), "n = {n}");
            assert!(!verify_covering_pair(&bullet, &bullet), "n = {n}");
        }
    }

    #[test]
    fn queries_are_symmetric_and_land_on_neighbors() {
        for n in 2..=6 {
            for variant in [Variant::Bullet, Variant::Circ] {
                let g = GraphHandle::perm(n).unwrap();
                for v in g.vertices() {
                    let Vertex::Perm(p) = &v else { unreachable!() };
                    if let Some((w, swap)) = perm_matched_neighbor(p, variant).unwrap() {
                        assert_eq!(&p.apply_transposition(swap).unwrap(), &w);
                        assert!(swap <= 3 && swap < n, "swap {swap} stays within the first four letters");
                        let (back, back_swap) =
                            perm_matched_neighbor(&w, variant).unwrap().unwrap();
                        assert_eq!((back, back_swap), (p.clone(), swap));
                    }
                }
            }
        }
    }

    #[test]
    fn long_word_query_is_consistent_with_suffix_transport() {
        // 214536: strip the suffix "36", standardize 2145 to 2134, look it
        // up under the sign of that suffix, and replay the swap.
        let v = perm("214536");
        let (w, swap) = perm_matched_neighbor(&v, Variant::Bullet).unwrap().unwrap();
        assert_eq!(swap, 2);
        assert_eq!(w, perm("241536"));
    }

    #[test]
    fn cube_residues_favor_small_level_classes() {
        assert_eq!(cube_residue(2), 2);
        assert_eq!(cube_residue(3), 3);
        assert_eq!(cube_residue(4), 1);
    }

    #[test]
    fn two_cube_matching_is_the_expected_one() {
        let table = CubeMatching::new(2).unwrap();
        let pairs: Vec<(String, String)> = {
            let g = GraphHandle::cube(2).unwrap();
            let qm = QueryMatching::new(&g, Variant::Bullet).unwrap();
            materialize(&g, &qm, 16)
                .unwrap()
                .edges
                .iter()
                .map(|&(a, b)| {
                    (
                        g.decode(a).unwrap().to_string(),
                        g.decode(b).unwrap().to_string(),
                    )
                })
                .collect()
        };
        assert_eq!(table.residue(), 2);
        assert_eq!(
            pairs,
            vec![
                ("00".to_string(), "10".to_string()),
                ("01".to_string(), "11".to_string())
            ]
        );
    }

    #[test]
    fn cube_matchings_are_maximal_within_the_stated_bound() {
        for n in 1..=8 {
            let g = GraphHandle::cube(n).unwrap();
            let qm = QueryMatching::new(&g, Variant::Bullet).unwrap();
            let m = materialize(&g, &qm, 1 << 20).unwrap();
            assert!(verify_maximal(&g, &m.edges).unwrap(), "n = {n}");
            let middle = g.level_sizes().unwrap()[n / 2];
            assert!(
                3 * m.size() <= (1u64 << n) + 18 * middle,
                "n = {n}: size {} beyond bound",
                m.size()
            );
        }
    }

    #[test]
    fn six_cube_matching_size_is_stable() {
        // Frozen after the first verified run; guards the determinism of
        // the chain cuts and the greedy completion.
        let table = CubeMatching::new(6).unwrap();
        assert_eq!(table.residue(), cube_residue(6));
        let g = GraphHandle::cube(6).unwrap();
        let qm = QueryMatching::new(&g, Variant::Bullet).unwrap();
        let m = materialize(&g, &qm, 1 << 20).unwrap();
        assert_eq!(m.size(), table.size());
        assert!(verify_maximal(&g, &m.edges).unwrap());
        assert!(3 * m.size() <= 64 + 18 * 20);
    }

    #[test]
    fn product_combiner_moves_only_the_first_coordinate() {
        assert_eq!(
            product_matched_neighbor(&[4, 2], &[perm("1234"), perm("12")], Variant::Bullet)
                .unwrap(),
            None
        );
        let (w, label) =
            product_matched_neighbor(&[4, 2], &[perm("1234"), perm("12")], Variant::Circ)
                .unwrap()
                .unwrap();
        assert_eq!(w, vec![perm("1324"), perm("12")]);
        assert_eq!(label, EdgeLabel::Factor { factor: 1, tau: 2 });
        // An odd second coordinate flips the variant.
        let (w, _) =
            product_matched_neighbor(&[4, 2], &[perm("2134"), perm("21")], Variant::Circ)
                .unwrap()
                .unwrap();
        assert_eq!(w, vec![perm("2314"), perm("21")]);
    }

    #[test]
    fn product_matchings_have_third_size_and_are_maximal() {
        for spec in [vec![4usize, 2], vec![3, 3], vec![3, 2, 2]] {
            let g = GraphHandle::product(&spec).unwrap();
            let expected = g.vertex_count() / 3;
            for variant in [Variant::Bullet, Variant::Circ] {
                let qm = QueryMatching::new(&g, variant).unwrap();
                let m = materialize(&g, &qm, 1 << 20).unwrap();
                assert_eq!(m.size(), expected, "{spec:?} {variant}");
                assert!(verify_maximal(&g, &m.edges).unwrap(), "{spec:?} {variant}");
            }
            let bullet = materialize(&g, &QueryMatching::new(&g, Variant::Bullet).unwrap(), 1 << 20)
                .unwrap();
            let circ = materialize(&g, &QueryMatching::new(&g, Variant::Circ).unwrap(), 1 << 20)
                .unwrap();
            assert!(verify_covering_pair(&bullet, &circ), "{spec:?}");
        }
    }

    #[test]
    fn all_two_products_route_through_the_cube_table() {
        let g = GraphHandle::product(&[2, 2, 2, 2]).unwrap();
        let qm = QueryMatching::new(&g, Variant::Bullet).unwrap();
        let m = materialize(&g, &qm, 1 << 20).unwrap();
        assert!(verify_maximal(&g, &m.edges).unwrap());
        let cube = GraphHandle::cube(4).unwrap();
        let cube_m = materialize(
            &cube,
            &QueryMatching::new(&cube, Variant::Bullet).unwrap(),
            1 << 20,
        )
        .unwrap();
        // Same codes: the rank of a two-letter coordinate is its bit.
        assert_eq!(m.edges, cube_m.edges);
    }

    #[test]
    fn verifier_rejects_non_edges_and_double_cover() {
        let g = GraphHandle::perm(3).unwrap();
        let code = |w: &str| perm(w).lex_rank().unwrap();
        // 123 and 321 are antipodal, not adjacent.
        assert!(verify_matching(&g, &[(code("123"), code("321"))]).is_err());
        // 213 on two edges.
        let edges = [(code("123"), code("213")), (code("213"), code("231"))];
        assert!(!verify_matching(&g, &edges).unwrap());
        // The empty matching is a matching but not maximal.
        assert!(verify_matching(&g, &[]).unwrap());
        assert!(!verify_maximal(&g, &[]).unwrap());
        // The hand table is maximal.
        let edges = [(code("123"), code("213")), (code("312"), code("321"))];
        assert!(verify_maximal(&g, &edges).unwrap());
    }

    #[test]
    fn streaming_maximality_agrees_with_materialized_check() {
        for n in 3..=6 {
            let g = GraphHandle::perm(n).unwrap();
            let qm = QueryMatching::new(&g, Variant::Circ).unwrap();
            assert!(verify_streaming_maximal(&g, &qm).unwrap(), "n = {n}");
        }
        let g = GraphHandle::cube(7).unwrap();
        let qm = QueryMatching::new(&g, Variant::Bullet).unwrap();
        assert!(verify_streaming_maximal(&g, &qm).unwrap());
    }

    #[test]
    fn materialize_respects_the_cap() {
        let g = GraphHandle::perm(5).unwrap();
        let qm = QueryMatching::new(&g, Variant::Circ).unwrap();
        assert!(matches!(
            materialize(&g, &qm, 100),
            Err(Error::CapExceeded { needed: 120, cap: 100 })
        ));
    }
}
