//! Level-by-level matchings from saturation arguments.
//!
//! Graphs whose edges only join consecutive levels (the permutahedron under
//! inversion count, the hypercube under weight) admit small maximal
//! matchings assembled from three-level blocks: every third level is fully
//! covered by matching it downward and the leftovers upward. Saturation is
//! established constructively by maximum bipartite matching, so a failed
//! expansion condition is reported rather than papered over. The hypercube
//! also gets the symmetric-chain route, where each vertex finds its chain
//! by bracket matching.

use crate::graphs::{BitWord, GraphHandle};
use crate::matchings::MaterializedMatching;
use crate::{Error, Result, DEFAULT_ENUMERATION_CAP};
use std::collections::VecDeque;
use std::fmt;

/// Which neighbor level a saturation question refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::Up => write!(f, "up"),
            Direction::Down => write!(f, "down"),
        }
    }
}

impl std::str::FromStr for Direction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Direction> {
        match s {
            "up" => Ok(Direction::Up),
            "down" => Ok(Direction::Down),
            other => Err(Error::Parse(format!(
                "unknown direction {other:?} (expected up or down)"
            ))),
        }
    }
}

/// The symmetric chain through a bit word.
///
/// Zeros are read as opening and ones as closing brackets; matched pairs
/// stay fixed, and the unmatched positions (always some closing brackets
/// followed by some opening ones) sweep through all fillings of the form
/// ones-then-zeros. The resulting words form a path climbing one level per
/// step, symmetric about half the dimension, and every word lies on exactly
/// one such path.
pub fn scd_chain(x: &BitWord) -> Vec<BitWord> {
    let n = x.n();
    let mut open_stack = Vec::new();
    let mut unmatched = Vec::new(); // unmatched closing positions, ascending
    for i in 1..=n {
        if x.get(i) {
            if open_stack.pop().is_none() {
                unmatched.push(i);
            }
        } else {
            open_stack.push(i);
        }
    }
    debug_assert!(
        unmatched.last().copied().unwrap_or(0) < open_stack.first().copied().unwrap_or(n + 1),
        "unmatched closers precede unmatched openers"
    );
    unmatched.extend(open_stack); // now all unmatched positions, ascending
    let free = unmatched.len();
    let mut chain = Vec::with_capacity(free + 1);
    for ones in 0..=free {
        let mut word = *x;
        for (idx, &pos) in unmatched.iter().enumerate() {
            let want = idx < ones;
            if word.get(pos) != want {
                word = word.flip(pos).expect("position in range");
            }
        }
        chain.push(word);
    }
    chain
}

/// A graph's vertices grouped by level, with the consecutive-level edge
/// property checked at construction.
pub struct LevelPartition {
    /// Vertex codes per level, ascending within each level.
    levels: Vec<Vec<u64>>,
}

impl LevelPartition {
    /// Scan the whole graph (guarded by `cap`) and group codes by level.
    pub fn new(g: &GraphHandle, cap: u64) -> Result<LevelPartition> {
        if g.vertex_count() > cap {
            return Err(Error::CapExceeded {
                needed: g.vertex_count(),
                cap,
            });
        }
        let top = g.max_level()?;
        let mut levels = vec![Vec::new(); top + 1];
        for code in 0..g.vertex_count() {
            let v = g.decode(code)?;
            let k = g.level(&v)? as usize;
            levels[k].push(code);
            for (w, _) in g.neighbors(&v)? {
                let j = g.level(&w)?;
                if j.abs_diff(k as u64) != 1 {
                    return Err(Error::InvalidSpec(format!(
                        "edge {v} -- {w} joins levels {k} and {j}, \
                         so the level structure is not layered"
                    )));
                }
            }
        }
        Ok(LevelPartition { levels })
    }

    /// The top level index.
    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    /// Vertex codes of one level.
    pub fn level(&self, k: usize) -> &[u64] {
        &self.levels[k]
    }

    /// All level sizes, bottom to top.
    pub fn sizes(&self) -> Vec<u64> {
        self.levels.iter().map(|l| l.len() as u64).collect()
    }
}

/// Maximum matching in a bipartite graph given as adjacency lists from the
/// left side. Returns, for each left vertex, its matched right vertex.
/// Alternating breadth-first phases with shortest augmenting paths make the
/// result independent of input order beyond the lists themselves.
pub fn max_bipartite_matching(adj: &[Vec<usize>], right_count: usize) -> Vec<Option<usize>> {
    let left_count = adj.len();
    let mut match_left: Vec<Option<usize>> = vec![None; left_count];
    let mut match_right: Vec<Option<usize>> = vec![None; right_count];
    let mut dist = vec![usize::MAX; left_count];
    loop {
        let mut queue = VecDeque::new();
        for (u, m) in match_left.iter().enumerate() {
            if m.is_none() {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut reachable_free = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                match match_right[v] {
                    None => reachable_free = true,
                    Some(u2) => {
                        if dist[u2] == usize::MAX {
                            dist[u2] = dist[u] + 1;
                            queue.push_back(u2);
                        }
                    }
                }
            }
        }
        if !reachable_free {
            return match_left;
        }
        for u in 0..left_count {
            if match_left[u].is_none() {
                augment(u, adj, &mut dist, &mut match_left, &mut match_right);
            }
        }
    }
}

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    dist: &mut [usize],
    match_left: &mut [Option<usize>],
    match_right: &mut [Option<usize>],
) -> bool {
    for &v in &adj[u] {
        let step_ok = match match_right[v] {
            None => true,
            Some(u2) => {
                dist[u2] == dist[u].wrapping_add(1)
                    && augment(u2, adj, dist, match_left, match_right)
            }
        };
        if step_ok {
            match_left[u] = Some(v);
            match_right[v] = Some(u);
            return true;
        }
    }
    dist[u] = usize::MAX;
    false
}

/// Adjacency lists from the codes in `left` to indices into `right`.
fn level_adjacency(g: &GraphHandle, left: &[u64], right: &[u64]) -> Result<Vec<Vec<usize>>> {
    let mut adj = Vec::with_capacity(left.len());
    for &code in left {
        let v = g.decode(code)?;
        let mut row = Vec::new();
        for (w, _) in g.neighbors(&v)? {
            if let Ok(idx) = right.binary_search(&g.encode(&w)?) {
                row.push(idx);
            }
        }
        adj.push(row);
    }
    Ok(adj)
}

/// Whether a maximum matching between level `k` and the next level in the
/// given direction saturates level `k`.
pub fn hall_check(g: &GraphHandle, k: usize, direction: Direction) -> Result<bool> {
    hall_check_with(g, &LevelPartition::new(g, DEFAULT_ENUMERATION_CAP)?, k, direction)
}

/// [`hall_check`] against a pre-built partition.
pub fn hall_check_with(
    g: &GraphHandle,
    lp: &LevelPartition,
    k: usize,
    direction: Direction,
) -> Result<bool> {
    let top = lp.top();
    let other = match direction {
        Direction::Up if k < top => k + 1,
        Direction::Down if k > 0 => k - 1,
        _ => {
            return Err(Error::PositionOutOfRange {
                position: k,
                max: top,
            })
        }
    };
    let adj = level_adjacency(g, lp.level(k), lp.level(other))?;
    let matched = max_bipartite_matching(&adj, lp.level(other).len())
        .iter()
        .filter(|m| m.is_some())
        .count();
    Ok(matched == lp.level(k).len())
}

/// The three-level block at level `k`: a matching covering every vertex of
/// level `k` and of its inner neighbor level, using exactly one edge per
/// level-`k` vertex.
///
/// Going up, level `k − 1` is saturated into level `k` first, and the
/// leftover level-`k` vertices are saturated into level `k + 1`; going
/// down, level `k + 1` is saturated into level `k` first, and the leftovers
/// continue into level `k − 1`. A saturation that falls short is reported
/// with the offending level.
pub fn build_layer_pair(
    g: &GraphHandle,
    k: usize,
    direction: Direction,
) -> Result<MaterializedMatching> {
    build_layer_pair_with(g, &LevelPartition::new(g, DEFAULT_ENUMERATION_CAP)?, k, direction)
}

/// [`build_layer_pair`] against a pre-built partition.
pub fn build_layer_pair_with(
    g: &GraphHandle,
    lp: &LevelPartition,
    k: usize,
    direction: Direction,
) -> Result<MaterializedMatching> {
    if k == 0 || k >= lp.top() {
        return Err(Error::PositionOutOfRange {
            position: k,
            max: lp.top().saturating_sub(1),
        });
    }
    let (first_level, last_level) = match direction {
        Direction::Up => (k - 1, k + 1),
        Direction::Down => (k + 1, k - 1),
    };
    let mid = lp.level(k);
    let mut edges = Vec::with_capacity(mid.len());
    let mut mid_covered = vec![false; mid.len()];

    // Saturate the inner neighbor level into level k.
    let first = lp.level(first_level);
    let adj = level_adjacency(g, first, mid)?;
    let matching = max_bipartite_matching(&adj, mid.len());
    for (u, m) in matching.iter().enumerate() {
        match m {
            Some(v) => {
                mid_covered[*v] = true;
                let (a, b) = (first[u], mid[*v]);
                edges.push((a.min(b), a.max(b)));
            }
            None => {
                return Err(Error::HallConditionFailed {
                    level: first_level,
                    direction: direction.to_string(),
                    matched: matching.iter().flatten().count(),
                    required: first.len(),
                })
            }
        }
    }

    // Saturate the exposed part of level k into the outer neighbor level.
    let leftovers: Vec<u64> = mid
        .iter()
        .zip(&mid_covered)
        .filter(|(_, covered)| !**covered)
        .map(|(&code, _)| code)
        .collect();
    let last = lp.level(last_level);
    let adj = level_adjacency(g, &leftovers, last)?;
    let matching = max_bipartite_matching(&adj, last.len());
    for (u, m) in matching.iter().enumerate() {
        match m {
            Some(v) => {
                let (a, b) = (leftovers[u], last[*v]);
                edges.push((a.min(b), a.max(b)));
            }
            None => {
                return Err(Error::HallConditionFailed {
                    level: k,
                    direction: direction.to_string(),
                    matched: matching.iter().flatten().count(),
                    required: leftovers.len(),
                })
            }
        }
    }

    debug_assert_eq!(edges.len(), mid.len(), "one edge per level-{k} vertex");
    edges.sort_unstable();
    Ok(MaterializedMatching {
        edges,
        exposed: Vec::new(), // blocks record edges only; exposure is per-graph
    })
}

/// The residue `p ∈ {1, 2, 3}` whose level class is lightest: it minimizes
/// the total size of the levels `k ≡ p (mod 3)` (all levels counted, the
/// bottom one belonging to residue 3), taking the smallest residue on ties.
/// By pigeonhole the chosen class holds at most a third of the vertices.
pub fn residue_cut(sizes: &[u64]) -> usize {
    (1..=3)
        .min_by_key(|&p| {
            sizes
                .iter()
                .enumerate()
                .filter(|(k, _)| k % 3 == p % 3)
                .map(|(_, &c)| c)
                .sum::<u64>()
        })
        .expect("nonempty range")
}

/// A layered matching together with how it was assembled.
pub struct LayeredOutcome {
    pub matching: MaterializedMatching,
    /// The chosen residue.
    pub residue: usize,
    pub level_sizes: Vec<u64>,
    /// Largest size the construction is allowed to reach:
    /// ⌊(|V| + 18·max middle level)/3⌋.
    pub bound: u64,
}

/// Assemble a maximal matching from three-level blocks.
///
/// Blocks sit at the levels of the lightest residue class, skipping the two
/// middle levels; below the middle they are built upward, above it
/// downward, so distinct blocks never share a vertex. A greedy pass in
/// ascending code order (smallest edge label first) completes the matching,
/// and the stated size bound is enforced before returning.
pub fn layered_matching(g: &GraphHandle, cap: u64) -> Result<LayeredOutcome> {
    let lp = LevelPartition::new(g, cap)?;
    let top = lp.top();
    let sizes = lp.sizes();
    let residue = residue_cut(&sizes);
    let (lo_mid, hi_mid) = (top / 2, top.div_ceil(2));

    let mut edges = Vec::new();
    for k in 1..top {
        if k % 3 != residue % 3 || k == lo_mid || k == hi_mid {
            continue;
        }
        let direction = if k < lo_mid {
            Direction::Up
        } else {
            Direction::Down
        };
        let block = build_layer_pair_with(g, &lp, k, direction)?;
        edges.extend(block.edges);
    }

    let count = g.vertex_count() as usize;
    let mut covered = vec![false; count];
    for &(a, b) in &edges {
        debug_assert!(!covered[a as usize] && !covered[b as usize], "blocks overlap");
        covered[a as usize] = true;
        covered[b as usize] = true;
    }
    let mut exposed = Vec::new();
    for code in 0..count {
        if covered[code] {
            continue;
        }
        let v = g.decode(code as u64)?;
        let mut matched = false;
        for (w, _) in g.neighbors(&v)? {
            let wc = g.encode(&w)? as usize;
            if !covered[wc] {
                covered[code] = true;
                covered[wc] = true;
                edges.push((code as u64, wc as u64));
                matched = true;
                break;
            }
        }
        if !matched {
            exposed.push(code as u64);
        }
    }
    edges.sort_unstable();

    let max_mid = sizes[lo_mid].max(sizes[hi_mid]);
    let bound = (g.vertex_count() + 18 * max_mid) / 3;
    assert!(
        edges.len() as u64 <= bound,
        "layered matching of size {} exceeds its bound {bound}",
        edges.len()
    );
    Ok(LayeredOutcome {
        matching: MaterializedMatching { edges, exposed },
        residue,
        level_sizes: sizes,
        bound,
    })
}
