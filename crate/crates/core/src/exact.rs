//! Desk-scale exact solvers: minimum maximal matching and maximum
//! independent set.
//!
//! Both solvers are plain depth-first branch and bound with deterministic
//! tie-breaking, so identical inputs give identical results — including
//! the witness — across runs. They work on a [`DenseGraph`], a fully
//! materialized graph with string vertex names, built either from one of
//! the built-in families or from a plain edge-list file, which makes the
//! minimum-maximal-matching solver usable as a standalone edge-domination
//! tool.
//!
//! The matching solver branches on an undominated edge (one whose
//! endpoints are both unmatched), trying "matched" before "excluded"; an
//! excluded edge must eventually receive a matched neighbor, and the
//! solver propagates that obligation: an excluded edge with exactly one
//! remaining candidate forces it, and one with none kills the branch. A
//! counting bound prunes: each future matched edge can dominate at most
//! `max over addable edges of (1 + adjacent undominated)` edges that are
//! currently undominated.
//!
//! For instances beyond the built-in solvers there is an LP-format
//! emitter, so an external integer-programming solver can reproduce the
//! same optima.

use std::collections::BTreeSet;
use std::collections::HashMap;
use std::io::Write as IoWrite;
use std::path::Path;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::Error;
use crate::graphs::GraphHandle;
use crate::Result;

/// Default edge-count guard for the matching solver.
pub const MMM_EDGE_GUARD: u64 = 500;
/// Edge-count guard for the matching solver under `hard`.
pub const MMM_EDGE_GUARD_HARD: u64 = 20_000;
/// Default vertex-count guard for the independent-set solver.
pub const MIS_VERTEX_GUARD: u64 = 10_000;
/// Vertex-count guard for the independent-set solver under `hard`.
pub const MIS_VERTEX_GUARD_HARD: u64 = 100_000;

/// A fully materialized graph with named vertices.
///
/// Vertex indices are stable: family graphs use code order, edge-list
/// files use first appearance. Edges are stored with the smaller index
/// first, sorted lexicographically; that order is the solver's
/// tie-breaking order.
#[derive(Clone, Debug)]
pub struct DenseGraph {
    names: Vec<String>,
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    incident: Vec<Vec<usize>>,
    edge_adj: Vec<Vec<usize>>,
}

impl DenseGraph {
    fn build(names: Vec<String>, edge_pairs: BTreeSet<(usize, usize)>) -> DenseGraph {
        let n = names.len();
        let edges: Vec<(usize, usize)> = edge_pairs.into_iter().collect();
        let mut adj = vec![Vec::new(); n];
        let mut incident = vec![Vec::new(); n];
        for (i, &(u, v)) in edges.iter().enumerate() {
            adj[u].push(v);
            adj[v].push(u);
            incident[u].push(i);
            incident[v].push(i);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let mut edge_adj = vec![Vec::new(); edges.len()];
        for (i, &(u, v)) in edges.iter().enumerate() {
            let mut around: Vec<usize> = incident[u]
                .iter()
                .chain(&incident[v])
                .copied()
                .filter(|&j| j != i)
                .collect();
            around.sort_unstable();
            around.dedup();
            edge_adj[i] = around;
        }
        DenseGraph {
            names,
            adj,
            edges,
            incident,
            edge_adj,
        }
    }

    /// Materialize one of the built-in families, with display names.
    pub fn from_handle(g: &GraphHandle, cap: u64) -> Result<DenseGraph> {
        let count = g.vertex_count();
        if count > cap {
            return Err(Error::CapExceeded { needed: count, cap });
        }
        let names: Vec<String> = g.vertices().map(|v| v.to_string()).collect();
        let mut pairs = BTreeSet::new();
        for (u, v, _) in g.edges() {
            let a = g.encode(&u)? as usize;
            let b = g.encode(&v)? as usize;
            pairs.insert((a.min(b), a.max(b)));
        }
        Ok(DenseGraph::build(names, pairs))
    }

    /// Parse a plain edge list: one `u v` pair per line, whitespace
    /// separated, vertex names arbitrary strings; `#` starts a comment
    /// line. Duplicate edges collapse; self-loops are rejected.
    pub fn from_edge_list(text: &str) -> Result<DenseGraph> {
        let mut names: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut pairs = BTreeSet::new();
        for (line_no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != 2 {
                return Err(Error::Parse(format!(
                    "edge list line {}: expected two tokens, got {}",
                    line_no + 1,
                    tokens.len()
                )));
            }
            let mut id = |name: &str| -> usize {
                *index.entry(name.to_string()).or_insert_with(|| {
                    names.push(name.to_string());
                    names.len() - 1
                })
            };
            let u = id(tokens[0]);
            let v = id(tokens[1]);
            if u == v {
                return Err(Error::Parse(format!(
                    "edge list line {}: self-loop at {:?}",
                    line_no + 1,
                    tokens[0]
                )));
            }
            pairs.insert((u.min(v), u.max(v)));
        }
        Ok(DenseGraph::build(names, pairs))
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Display name of a vertex.
    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    /// Edges as index pairs, smaller index first, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbor indices.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Largest vertex degree (0 for an edgeless graph).
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Check that the edge indices form a matching: no two share a vertex.
    pub fn is_matching(&self, edge_ids: &[usize]) -> bool {
        let mut used = vec![false; self.vertex_count()];
        for &e in edge_ids {
            let (u, v) = self.edges[e];
            if used[u] || used[v] {
                return false;
            }
            used[u] = true;
            used[v] = true;
        }
        true
    }

    /// Check that the edge indices form a maximal matching.
    pub fn is_maximal_matching(&self, edge_ids: &[usize]) -> bool {
        if !self.is_matching(edge_ids) {
            return false;
        }
        let mut used = vec![false; self.vertex_count()];
        for &e in edge_ids {
            let (u, v) = self.edges[e];
            used[u] = true;
            used[v] = true;
        }
        self.edges.iter().all(|&(u, v)| used[u] || used[v])
    }

    /// Check that the vertex indices are pairwise non-adjacent.
    pub fn is_independent_set(&self, vertex_ids: &[usize]) -> bool {
        let chosen: BTreeSet<usize> = vertex_ids.iter().copied().collect();
        if chosen.len() != vertex_ids.len() {
            return false;
        }
        self.edges
            .iter()
            .all(|&(u, v)| !(chosen.contains(&u) && chosen.contains(&v)))
    }
}

/// The optimal structure a solver found, in display names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "items", rename_all = "snake_case")]
pub enum Witness {
    Edges(Vec<[String; 2]>),
    Vertices(Vec<String>),
}

/// Outcome of an exact solve.
///
/// When `proven` is true, `optimum` is the exact answer; otherwise it is
/// the best value found before the time limit. The witness always attains
/// `optimum` and always passes the corresponding verifier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactResult {
    pub optimum: u64,
    pub witness: Witness,
    pub nodes_explored: u64,
    pub proven: bool,
    pub time_limit_hit: bool,
}

/// Knobs shared by both solvers.
#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Wall-clock budget; on expiry the best incumbent is returned with
    /// `proven = false`.
    pub time_limit: Duration,
    /// Lift the instance-size guards to their hard limits.
    pub hard: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            time_limit: Duration::from_secs(60),
            hard: false,
        }
    }
}

// ---------------------------------------------------------------------
// Minimum maximal matching
// ---------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq)]
enum EdgeState {
    Free,
    InM,
    Excluded,
}

struct MmmSolver<'a> {
    g: &'a DenseGraph,
    deadline: Instant,
    timed_out: bool,
    nodes: u64,
    state: Vec<EdgeState>,
    covered: Vec<u8>,
    chosen: Vec<usize>,
    best: Vec<usize>,
}

impl<'a> MmmSolver<'a> {
    fn new(g: &'a DenseGraph, time_limit: Duration) -> MmmSolver<'a> {
        MmmSolver {
            g,
            deadline: Instant::now() + time_limit,
            timed_out: false,
            nodes: 0,
            state: vec![EdgeState::Free; g.edge_count()],
            covered: vec![0; g.vertex_count()],
            chosen: Vec::new(),
            best: greedy_small_maximal(g),
        }
    }

    fn add_to_m(&mut self, e: usize) {
        debug_assert!(self.state[e] == EdgeState::Free);
        let (u, v) = self.g.edges[e];
        debug_assert!(self.covered[u] == 0 && self.covered[v] == 0);
        self.state[e] = EdgeState::InM;
        self.covered[u] += 1;
        self.covered[v] += 1;
        self.chosen.push(e);
    }

    fn remove_from_m(&mut self, e: usize) {
        debug_assert!(self.state[e] == EdgeState::InM);
        let (u, v) = self.g.edges[e];
        self.state[e] = EdgeState::Free;
        self.covered[u] -= 1;
        self.covered[v] -= 1;
        let popped = self.chosen.pop();
        debug_assert_eq!(popped, Some(e));
    }

    fn undominated(&self, e: usize) -> bool {
        let (u, v) = self.g.edges[e];
        self.covered[u] == 0 && self.covered[v] == 0
    }

    fn addable(&self, e: usize) -> bool {
        self.state[e] == EdgeState::Free && self.undominated(e)
    }

    /// Force unavoidable additions; false means the branch is infeasible
    /// (an excluded edge can no longer be dominated). Forced edges are
    /// appended to `forced` for the caller to undo.
    fn propagate(&mut self, forced: &mut Vec<usize>) -> bool {
        loop {
            let mut forced_edge = None;
            for e in 0..self.g.edge_count() {
                if self.state[e] != EdgeState::Excluded || !self.undominated(e) {
                    continue;
                }
                let mut candidates = self.g.edge_adj[e].iter().filter(|&&f| self.addable(f));
                match (candidates.next(), candidates.next()) {
                    (None, _) => return false,
                    (Some(&f), None) => {
                        forced_edge = Some(f);
                        break;
                    }
                    _ => {}
                }
            }
            match forced_edge {
                None => return true,
                Some(f) => {
                    self.add_to_m(f);
                    forced.push(f);
                }
            }
        }
    }

    fn dfs(&mut self) {
        if self.timed_out {
            return;
        }
        self.nodes += 1;
        if self.nodes & 0xFF == 1 && Instant::now() >= self.deadline {
            self.timed_out = true;
            return;
        }

        let mut forced = Vec::new();
        if self.propagate(&mut forced) {
            self.explore();
        }
        for &e in forced.iter().rev() {
            self.remove_from_m(e);
        }
    }

    /// Prune, record, or branch at a propagation-stable node.
    fn explore(&mut self) {
        let m = self.chosen.len();
        if m >= self.best.len() {
            return;
        }
        let undominated: Vec<usize> =
            (0..self.g.edge_count()).filter(|&e| self.undominated(e)).collect();
        if undominated.is_empty() {
            // Every edge touches a matched vertex: the matching is maximal.
            self.best = self.chosen.clone();
            return;
        }

        // Branch choice and counting bound share one scan: among addable
        // edges, find the one dominating the most undominated edges.
        let mut pick = None;
        let mut pick_score = 0usize;
        let mut max_cover = 0usize;
        for &e in &undominated {
            if self.state[e] != EdgeState::Free {
                continue;
            }
            let score = self.g.edge_adj[e]
                .iter()
                .filter(|&&f| self.undominated(f))
                .count();
            if score + 1 > max_cover {
                max_cover = score + 1;
            }
            if pick.is_none() || score > pick_score {
                pick = Some(e);
                pick_score = score;
            }
        }
        let Some(e) = pick else {
            // Undominated edges remain but none can be added: the
            // propagation pass has already declared such nodes infeasible.
            unreachable!("undominated edges without any addable edge survive propagation");
        };
        let need = undominated.len().div_ceil(max_cover);
        if m + need >= self.best.len() {
            return;
        }

        self.add_to_m(e);
        self.dfs();
        self.remove_from_m(e);

        self.state[e] = EdgeState::Excluded;
        self.dfs();
        self.state[e] = EdgeState::Free;
    }
}

/// A small maximal matching by repeated best-coverage choice, used to
/// seed the incumbent. Several deterministic starts, keep the smallest.
fn greedy_small_maximal(g: &DenseGraph) -> Vec<usize> {
    let starts = g.edge_count().min(24);
    let mut best: Option<Vec<usize>> = None;
    for first in 0..starts.max(1) {
        let mut covered = vec![false; g.vertex_count()];
        let mut chosen = Vec::new();
        let add = |e: usize, covered: &mut Vec<bool>, chosen: &mut Vec<usize>| {
            let (u, v) = g.edges[e];
            covered[u] = true;
            covered[v] = true;
            chosen.push(e);
        };
        if g.edge_count() > 0 && first < g.edge_count() {
            add(first, &mut covered, &mut chosen);
        }
        loop {
            let mut pick = None;
            let mut pick_score = 0usize;
            for e in 0..g.edge_count() {
                let (u, v) = g.edges[e];
                if covered[u] || covered[v] {
                    continue;
                }
                let score = g.edge_adj[e]
                    .iter()
                    .filter(|&&f| {
                        let (x, y) = g.edges[f];
                        !covered[x] && !covered[y]
                    })
                    .count();
                if pick.is_none() || score > pick_score {
                    pick = Some(e);
                    pick_score = score;
                }
            }
            match pick {
                None => break,
                Some(e) => add(e, &mut covered, &mut chosen),
            }
        }
        debug_assert!(g.is_maximal_matching(&chosen));
        if best.as_ref().is_none_or(|b| chosen.len() < b.len()) {
            best = Some(chosen);
        }
    }
    best.unwrap_or_default()
}

/// Exact minimum maximal matching (edge domination number).
///
/// Guarded to [`MMM_EDGE_GUARD`] edges by default ([`MMM_EDGE_GUARD_HARD`]
/// with `hard`). Within its time budget the search is complete and the
/// result is proven; on expiry the incumbent is returned with
/// `proven = false`.
pub fn exact_mmm(g: &DenseGraph, opts: &SolveOptions) -> Result<ExactResult> {
    let limit = if opts.hard {
        MMM_EDGE_GUARD_HARD
    } else {
        MMM_EDGE_GUARD
    };
    if g.edge_count() as u64 > limit {
        return Err(Error::SolverGuard {
            what: "edge count",
            value: g.edge_count() as u64,
            limit,
        });
    }
    let mut solver = MmmSolver::new(g, opts.time_limit);
    solver.dfs();
    let mut ids = solver.best;
    ids.sort_unstable();
    assert!(
        g.is_maximal_matching(&ids),
        "solver produced a non-maximal witness"
    );
    let witness = Witness::Edges(
        ids.iter()
            .map(|&e| {
                let (u, v) = g.edges[e];
                [g.name(u).to_string(), g.name(v).to_string()]
            })
            .collect(),
    );
    Ok(ExactResult {
        optimum: ids.len() as u64,
        witness,
        nodes_explored: solver.nodes,
        proven: !solver.timed_out,
        time_limit_hit: solver.timed_out,
    })
}

/// Reference oracle: enumerate all edge subsets of a tiny graph and take
/// the smallest maximal matching. Guarded to 20 edges.
pub fn brute_force_mmm(g: &DenseGraph) -> Result<u64> {
    let m = g.edge_count();
    if m > 20 {
        return Err(Error::SolverGuard {
            what: "edge count (subset enumeration)",
            value: m as u64,
            limit: 20,
        });
    }
    // Conflict mask per edge: edges sharing an endpoint.
    let conflict: Vec<u32> = (0..m)
        .map(|e| self_and_neighbors_mask(g, e) & !(1u32 << e))
        .collect();
    let mut best = u32::MAX;
    'subsets: for mask in 0u32..(1u32 << m) {
        if mask.count_ones() >= best {
            continue;
        }
        for (e, &conf) in conflict.iter().enumerate() {
            let bit = 1u32 << e;
            if mask & bit != 0 {
                if mask & conf != 0 {
                    continue 'subsets; // two chosen edges share a vertex
                }
            } else if mask & (bit | conf) == 0 {
                continue 'subsets; // this edge could still be added
            }
        }
        best = mask.count_ones();
    }
    Ok(best as u64)
}

fn self_and_neighbors_mask(g: &DenseGraph, e: usize) -> u32 {
    let mut mask = 1u32 << e;
    for &f in &g.edge_adj[e] {
        mask |= 1u32 << f;
    }
    mask
}

// ---------------------------------------------------------------------
// Maximum independent set
// ---------------------------------------------------------------------

/// Fixed-width bitset over vertex indices.
#[derive(Clone, PartialEq, Eq)]
struct VertexSet {
    words: Vec<u64>,
}

impl VertexSet {
    fn empty(n: usize) -> VertexSet {
        VertexSet {
            words: vec![0; n.div_ceil(64).max(1)],
        }
    }

    fn full(n: usize) -> VertexSet {
        let mut s = VertexSet::empty(n);
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn intersection_size(&self, other: &VertexSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    fn subtract(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }
}

struct MisSolver {
    masks: Vec<VertexSet>,
    deadline: Instant,
    timed_out: bool,
    nodes: u64,
    cur: Vec<usize>,
    best: Vec<usize>,
}

impl MisSolver {
    fn new(g: &DenseGraph, time_limit: Duration) -> MisSolver {
        let n = g.vertex_count();
        let mut masks = vec![VertexSet::empty(n); n];
        for &(u, v) in g.edges() {
            masks[u].insert(v);
            masks[v].insert(u);
        }
        let best = greedy_independent(g, &masks);
        MisSolver {
            masks,
            deadline: Instant::now() + time_limit,
            timed_out: false,
            nodes: 0,
            cur: Vec::new(),
            best,
        }
    }

    /// `|R| − (greedy matching in R)`: an upper bound on how many more
    /// vertices an independent set can take from `remaining`.
    fn upper_bound(&self, remaining: &VertexSet) -> usize {
        let mut unused = remaining.clone();
        let mut matched = 0usize;
        for v in remaining.iter() {
            if !unused.contains(v) {
                continue;
            }
            let pick = self
                .masks[v]
                .iter()
                .find(|&w| w != v && unused.contains(w) && remaining.contains(w));
            // Iterating masks yields ascending neighbors; take the first
            // still-available one.
            if let Some(w) = pick {
                unused.remove(v);
                unused.remove(w);
                matched += 1;
            }
        }
        remaining.len() - matched
    }

    fn dfs(&mut self, mut remaining: VertexSet) {
        if self.timed_out {
            return;
        }
        self.nodes += 1;
        if self.nodes & 0xFF == 1 && Instant::now() >= self.deadline {
            self.timed_out = true;
            return;
        }

        let taken_before = self.cur.len();

        // Reductions: isolated vertices always join; a degree-1 vertex
        // joins at the expense of its only neighbor.
        loop {
            let mut changed = false;
            let snapshot = remaining.clone();
            for v in snapshot.iter() {
                if !remaining.contains(v) {
                    continue; // already removed as someone's neighbor
                }
                match self.masks[v].intersection_size(&remaining) {
                    0 => {
                        self.cur.push(v);
                        remaining.remove(v);
                        changed = true;
                    }
                    1 => {
                        let w = self.masks[v]
                            .iter()
                            .find(|&w| remaining.contains(w))
                            .expect("degree 1");
                        self.cur.push(v);
                        remaining.remove(v);
                        remaining.remove(w);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                break;
            }
        }

        if remaining.is_empty() {
            if self.cur.len() > self.best.len() {
                self.best = self.cur.clone();
            }
            self.cur.truncate(taken_before);
            return;
        }

        if self.cur.len() + self.upper_bound(&remaining) <= self.best.len() {
            self.cur.truncate(taken_before);
            return;
        }

        // Branch on a maximum-degree vertex: taken first, then skipped.
        let v = remaining
            .iter()
            .max_by_key(|&v| {
                (
                    self.masks[v].intersection_size(&remaining),
                    usize::MAX - v, // ties fall to the smallest index
                )
            })
            .expect("nonempty");

        let mut without_closed = remaining.clone();
        without_closed.remove(v);
        without_closed.subtract(&self.masks[v]);
        self.cur.push(v);
        self.dfs(without_closed);
        self.cur.pop();

        let mut without_v = remaining;
        without_v.remove(v);
        self.dfs(without_v);

        self.cur.truncate(taken_before);
    }
}

/// Greedy independent set: repeatedly take a minimum-degree vertex.
fn greedy_independent(g: &DenseGraph, masks: &[VertexSet]) -> Vec<usize> {
    let n = g.vertex_count();
    let mut remaining = VertexSet::full(n);
    let mut chosen = Vec::new();
    while !remaining.is_empty() {
        let v = remaining
            .iter()
            .min_by_key(|&v| (masks[v].intersection_size(&remaining), v))
            .expect("nonempty");
        chosen.push(v);
        remaining.remove(v);
        remaining.subtract(&masks[v]);
    }
    debug_assert!(g.is_independent_set(&chosen));
    chosen
}

/// Exact maximum independent set.
///
/// Guarded to [`MIS_VERTEX_GUARD`] vertices by default
/// ([`MIS_VERTEX_GUARD_HARD`] with `hard`); same time-limit contract as
/// [`exact_mmm`].
pub fn exact_mis(g: &DenseGraph, opts: &SolveOptions) -> Result<ExactResult> {
    let limit = if opts.hard {
        MIS_VERTEX_GUARD_HARD
    } else {
        MIS_VERTEX_GUARD
    };
    if g.vertex_count() as u64 > limit {
        return Err(Error::SolverGuard {
            what: "vertex count",
            value: g.vertex_count() as u64,
            limit,
        });
    }
    let mut solver = MisSolver::new(g, opts.time_limit);
    let all = VertexSet::full(g.vertex_count());
    solver.dfs(all);
    let mut ids = solver.best;
    ids.sort_unstable();
    assert!(
        g.is_independent_set(&ids),
        "solver produced a dependent witness"
    );
    let witness = Witness::Vertices(ids.iter().map(|&v| g.name(v).to_string()).collect());
    Ok(ExactResult {
        optimum: ids.len() as u64,
        witness,
        nodes_explored: solver.nodes,
        proven: !solver.timed_out,
        time_limit_hit: solver.timed_out,
    })
}

// ---------------------------------------------------------------------
// Integer-program emitter
// ---------------------------------------------------------------------

/// Which integer program to emit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IpProblem {
    /// Minimum maximal matching: binary `x_e` per edge, at most one
    /// matched edge per vertex, every edge dominated.
    Mmm,
    /// Maximum independent set: binary `x_v` per vertex, at most one
    /// endpoint per edge.
    Mis,
}

impl std::str::FromStr for IpProblem {
    type Err = Error;

    fn from_str(s: &str) -> Result<IpProblem> {
        match s {
            "mmm" => Ok(IpProblem::Mmm),
            "mis" => Ok(IpProblem::Mis),
            other => Err(Error::Parse(format!(
                "unknown problem {other:?} (expected mmm or mis)"
            ))),
        }
    }
}

impl std::fmt::Display for IpProblem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            IpProblem::Mmm => "mmm",
            IpProblem::Mis => "mis",
        })
    }
}

fn write_folded<W: IoWrite>(out: &mut W, head: &str, terms: &[String], tail: &str) -> Result<()> {
    write!(out, "{head}")?;
    for (i, t) in terms.iter().enumerate() {
        if i > 0 && i % 12 == 0 {
            writeln!(out)?;
            write!(out, "   ")?;
        }
        if i > 0 {
            write!(out, " + ")?;
        }
        write!(out, "{t}")?;
    }
    writeln!(out, "{tail}")?;
    Ok(())
}

/// Write the integer program in LP format.
///
/// Variables are `x_<index>`; a comment block maps edge indices to vertex
/// names, which keeps arbitrary names out of the LP identifiers.
pub fn write_ip<W: IoWrite>(g: &DenseGraph, problem: IpProblem, out: &mut W) -> Result<()> {
    match problem {
        IpProblem::Mmm => {
            writeln!(out, "\\ minimum maximal matching: x_i = edge i is matched")?;
            for (i, &(u, v)) in g.edges().iter().enumerate() {
                writeln!(out, "\\ edge {i}: {} -- {}", g.name(u), g.name(v))?;
            }
            writeln!(out, "Minimize")?;
            let obj: Vec<String> = (0..g.edge_count()).map(|e| format!("x_{e}")).collect();
            write_folded(out, " obj: ", &obj, "")?;
            writeln!(out, "Subject To")?;
            for v in 0..g.vertex_count() {
                if g.incident[v].len() < 2 {
                    continue; // a single incident edge cannot conflict
                }
                let terms: Vec<String> =
                    g.incident[v].iter().map(|&e| format!("x_{e}")).collect();
                write_folded(out, &format!(" match_{v}: "), &terms, " <= 1")?;
            }
            for e in 0..g.edge_count() {
                let mut terms = vec![format!("x_{e}")];
                terms.extend(g.edge_adj[e].iter().map(|&f| format!("x_{f}")));
                write_folded(out, &format!(" dom_{e}: "), &terms, " >= 1")?;
            }
            writeln!(out, "Binary")?;
            for e in 0..g.edge_count() {
                writeln!(out, " x_{e}")?;
            }
            writeln!(out, "End")?;
        }
        IpProblem::Mis => {
            writeln!(out, "\\ maximum independent set: x_v = vertex v is chosen")?;
            for (v, name) in g.names.iter().enumerate() {
                writeln!(out, "\\ vertex {v}: {name}")?;
            }
            writeln!(out, "Maximize")?;
            let obj: Vec<String> = (0..g.vertex_count()).map(|v| format!("x_{v}")).collect();
            write_folded(out, " obj: ", &obj, "")?;
            writeln!(out, "Subject To")?;
            for (i, &(u, v)) in g.edges().iter().enumerate() {
                writeln!(out, " edge_{i}: x_{u} + x_{v} <= 1")?;
            }
            writeln!(out, "Binary")?;
            for v in 0..g.vertex_count() {
                writeln!(out, " x_{v}")?;
            }
            writeln!(out, "End")?;
        }
    }
    Ok(())
}

/// Write the integer program to a file.
pub fn emit_ip(g: &DenseGraph, problem: IpProblem, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path)?;
    let mut out = std::io::BufWriter::new(file);
    write_ip(g, problem, &mut out)?;
    out.flush()?;
    Ok(())
}
