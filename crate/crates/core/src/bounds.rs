//! Lower-bound certificates for minimum maximal matchings.
//!
//! The certificates rest on a counting argument. In a maximal matching
//! every edge of the graph shares an endpoint with some matched edge, so a
//! matched edge `uv` can be "responsible" for at most `2Δ − 1` edges, where
//! `Δ` is the maximum degree. When every edge additionally lies in at least
//! `α` induced four-cycles that pairwise share only that edge, the cycles
//! force part of that responsibility onto other matched edges, cutting the
//! per-edge capacity to `(4Δ − α − 2)/2`. Dividing the edge count
//! `d·|V|/2` (with `d` the average degree) by the capacity gives
//!
//! ```text
//! minimum maximal matching size  ≥  d·|V| / (4Δ − α − 2).
//! ```
//!
//! This module enumerates induced four-cycles, computes the per-edge and
//! per-graph heaviness `α` exactly, evaluates the closed-form bounds the
//! four families enjoy, and aggregates everything — together with upper
//! bounds from the constructive matchings and, on small instances, the
//! exact optimum — into a single consistency-checked report.
//!
//! All bound values are exact rationals; ceilings are justified because
//! matchings have integer size.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Duration;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::Error;
use crate::exact::{exact_mmm, DenseGraph, SolveOptions};
use crate::graphs::{Family, GraphHandle, Vertex};
use crate::layered::layered_matching;
use crate::matchings::{materialize, QueryMatching, Variant};
use crate::perm::factorial;
use crate::Result;

/// Largest edge count for which the report computes heaviness by
/// exhaustive scan when left on automatic.
pub const AUTO_ALPHA_EDGE_LIMIT: u64 = 20_000;

/// Largest edge count for which the report invokes the exact solver when
/// left on automatic.
pub const AUTO_EXACT_EDGE_LIMIT: u64 = 100;

/// Sorted neighbor codes of a vertex.
fn neighbor_codes(g: &GraphHandle, v: &Vertex) -> Result<Vec<u64>> {
    let mut codes = g
        .neighbors(v)?
        .into_iter()
        .map(|(w, _)| g.encode(&w))
        .collect::<Result<Vec<_>>>()?;
    codes.sort_unstable();
    Ok(codes)
}

/// The lexicographically least of the eight traversals of the cycle
/// `a – b – w – x – a`.
fn canonical_cycle(a: u64, b: u64, w: u64, x: u64) -> [u64; 4] {
    let ring = [a, b, w, x];
    let mut best = [u64::MAX; 4];
    for start in 0..4 {
        for step in [1usize, 3] {
            let cand = [
                ring[start],
                ring[(start + step) % 4],
                ring[(start + 2 * step) % 4],
                ring[(start + 3 * step) % 4],
            ];
            if cand < best {
                best = cand;
            }
        }
    }
    best
}

/// All induced four-cycles through the edge `uv`.
///
/// Each cycle is reported exactly once, as the code sequence of its four
/// vertices in traversal order, canonicalized so that the sequence starts
/// at the smallest code and continues toward its smaller cycle-neighbor;
/// the list is sorted. A four-cycle `u – v – w – x` counts as induced when
/// neither chord `uw` nor `vx` is an edge.
///
/// Errors when `uv` is not an edge of the graph.
pub fn induced_four_cycles_through(
    g: &GraphHandle,
    u: &Vertex,
    v: &Vertex,
) -> Result<Vec<[u64; 4]>> {
    let a = g.encode(u)?;
    let b = g.encode(v)?;
    let nb_a = neighbor_codes(g, u)?;
    let nb_b = neighbor_codes(g, v)?;
    if nb_a.binary_search(&b).is_err() {
        return Err(Error::NotAnEdge {
            u: u.to_string(),
            v: v.to_string(),
        });
    }
    let mut cycles = Vec::new();
    for &w in &nb_b {
        if w == a {
            continue;
        }
        let n_w = neighbor_codes(g, &g.decode(w)?)?;
        if n_w.binary_search(&a).is_ok() {
            continue; // chord u–w
        }
        for &x in &nb_a {
            if x == b || x == w || nb_b.binary_search(&x).is_ok() {
                continue; // not a new vertex, or chord v–x
            }
            if n_w.binary_search(&x).is_ok() {
                cycles.push(canonical_cycle(a, b, w, x));
            }
        }
    }
    cycles.sort_unstable();
    debug_assert!(cycles.windows(2).all(|p| p[0] != p[1]));
    Ok(cycles)
}

/// Exact maximum independent set of a conflict graph on at most 128
/// vertices, given as adjacency bitmasks.
fn conflict_mis(conflict: &[u128], remaining: u128) -> usize {
    if remaining == 0 {
        return 0;
    }
    // Vertices without remaining conflicts always join the solution.
    let mut rem = remaining;
    let mut base = 0usize;
    let mut probe = remaining;
    while probe != 0 {
        let v = probe.trailing_zeros() as usize;
        probe &= probe - 1;
        if conflict[v] & remaining == 0 {
            base += 1;
            rem &= !(1u128 << v);
        }
    }
    if rem == 0 {
        return base;
    }
    // Branch on a vertex of maximum remaining conflict degree.
    let mut pick = usize::MAX;
    let mut pick_deg = 0usize;
    probe = rem;
    while probe != 0 {
        let v = probe.trailing_zeros() as usize;
        probe &= probe - 1;
        let deg = (conflict[v] & rem).count_ones() as usize;
        if deg > pick_deg {
            pick_deg = deg;
            pick = v;
        }
    }
    let without = conflict_mis(conflict, rem & !(1u128 << pick));
    let with = 1 + conflict_mis(conflict, rem & !(1u128 << pick) & !conflict[pick]);
    base + without.max(with)
}

fn ordered_pair(a: u64, b: u64) -> (u64, u64) {
    (a.min(b), a.max(b))
}

/// The heaviness of an edge: the largest number of induced four-cycles
/// through it that pairwise share no other edge.
///
/// Computed exactly: the cycles through the edge form a conflict graph
/// (two cycles conflict when they share an edge other than `uv`) whose
/// maximum independent set is found by exhaustive branch and bound; these
/// conflict graphs have at most `Δ²` vertices.
pub fn edge_heaviness(g: &GraphHandle, u: &Vertex, v: &Vertex) -> Result<usize> {
    let cycles = induced_four_cycles_through(g, u, v)?;
    if cycles.len() > 128 {
        return Err(Error::Overflow(format!(
            "conflict graph with {} four-cycles exceeds the 128-cycle solver",
            cycles.len()
        )));
    }
    let spine = ordered_pair(g.encode(u)?, g.encode(v)?);
    let edge_sets: Vec<[(u64, u64); 3]> = cycles
        .iter()
        .map(|c| {
            let mut rest = [(0, 0); 3];
            let mut idx = 0;
            for i in 0..4 {
                let e = ordered_pair(c[i], c[(i + 1) % 4]);
                if e != spine {
                    rest[idx] = e;
                    idx += 1;
                }
            }
            debug_assert_eq!(idx, 3);
            rest
        })
        .collect();
    let mut conflict = vec![0u128; cycles.len()];
    for i in 0..cycles.len() {
        for j in i + 1..cycles.len() {
            if edge_sets[i].iter().any(|e| edge_sets[j].contains(e)) {
                conflict[i] |= 1u128 << j;
                conflict[j] |= 1u128 << i;
            }
        }
    }
    let all = if cycles.is_empty() {
        0
    } else {
        (!0u128) >> (128 - cycles.len())
    };
    Ok(conflict_mis(&conflict, all))
}

/// Heaviness of a whole graph: the minimum edge heaviness over the
/// inspected edges, with enough detail to audit the claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeavinessReport {
    /// Minimum heaviness over the inspected edges.
    pub alpha: usize,
    /// True when every edge of the graph was inspected.
    pub certified_exhaustive: bool,
    /// Number of edges inspected.
    pub edges_inspected: u64,
    /// `(heaviness value, number of inspected edges attaining it)`,
    /// ascending by value.
    pub value_counts: Vec<(usize, u64)>,
    /// A lightest inspected edge, in display form.
    pub min_edge: Option<[String; 2]>,
}

fn scan_heaviness(
    g: &GraphHandle,
    edge_codes: &[(u64, u64)],
    certified_exhaustive: bool,
) -> Result<HeavinessReport> {
    let values: Vec<usize> = edge_codes
        .par_iter()
        .map(|&(a, b)| {
            let u = g.decode(a)?;
            let v = g.decode(b)?;
            edge_heaviness(g, &u, &v)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    for &value in &values {
        *counts.entry(value).or_insert(0) += 1;
    }
    let alpha = values.iter().copied().min().unwrap_or(0);
    let min_edge = match values.iter().position(|&value| value == alpha) {
        None => None,
        Some(i) => {
            let (a, b) = edge_codes[i];
            Some([g.decode(a)?.to_string(), g.decode(b)?.to_string()])
        }
    };
    Ok(HeavinessReport {
        alpha,
        certified_exhaustive,
        edges_inspected: edge_codes.len() as u64,
        value_counts: counts.into_iter().collect(),
        min_edge,
    })
}

/// Exact graph heaviness by scanning every edge.
///
/// The per-edge computations run on the current thread pool; the result
/// does not depend on scheduling. Errors when the graph has more vertices
/// than `cap` — use [`graph_heaviness_sampled`] beyond that.
pub fn graph_heaviness(g: &GraphHandle, cap: u64) -> Result<HeavinessReport> {
    if g.vertex_count() > cap {
        return Err(Error::CapExceeded {
            needed: g.vertex_count(),
            cap,
        });
    }
    let mut edge_codes = Vec::with_capacity(g.edge_count().min(1 << 24) as usize);
    for (u, v, _) in g.edges() {
        edge_codes.push(ordered_pair(g.encode(&u)?, g.encode(&v)?));
    }
    scan_heaviness(g, &edge_codes, true)
}

/// Graph heaviness estimated from a seeded sample of distinct edges.
///
/// The sampled minimum is an upper bound on the true `α`, never a
/// certificate, and the report says so: `certified_exhaustive` is always
/// false here. Identical seeds give identical reports.
pub fn graph_heaviness_sampled(
    g: &GraphHandle,
    sample: usize,
    seed: u64,
) -> Result<HeavinessReport> {
    if sample == 0 {
        return Err(Error::InvalidSpec(
            "heaviness sample size must be positive".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked: BTreeSet<(u64, u64)> = BTreeSet::new();
    let budget = sample.saturating_mul(64).saturating_add(1024);
    let mut attempts = 0usize;
    while picked.len() < sample && attempts < budget {
        attempts += 1;
        let code = rng.gen_range(0..g.vertex_count());
        let v = g.decode(code)?;
        let neighbors = g.neighbors(&v)?;
        if neighbors.is_empty() {
            continue;
        }
        let w = &neighbors[rng.gen_range(0..neighbors.len())].0;
        picked.insert(ordered_pair(code, g.encode(w)?));
    }
    let edge_codes: Vec<(u64, u64)> = picked.into_iter().collect();
    scan_heaviness(g, &edge_codes, false)
}

/// An exact rational lower bound together with its integer ceiling.
///
/// Bound values are nonnegative by construction; the ceiling is a valid
/// bound on a matching size because matchings have integer size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BoundValue {
    value: Ratio<i128>,
}

impl BoundValue {
    /// Wrap a nonnegative rational.
    pub fn new(value: Ratio<i128>) -> Result<BoundValue> {
        if value < Ratio::from_integer(0) {
            return Err(Error::InvalidSpec(format!(
                "bound value {value} is negative"
            )));
        }
        Ok(BoundValue { value })
    }

    /// The exact rational value.
    pub fn value(&self) -> Ratio<i128> {
        self.value
    }

    /// The value in lowest terms, `"480/13"` style, or plain digits when
    /// integral.
    pub fn rational(&self) -> String {
        if self.value.is_integer() {
            self.value.numer().to_string()
        } else {
            format!("{}/{}", self.value.numer(), self.value.denom())
        }
    }

    /// The smallest integer at least the value.
    pub fn ceiling(&self) -> u64 {
        u64::try_from(self.value.ceil().to_integer())
            .expect("bound values are nonnegative and within u64 by construction")
    }
}

impl std::fmt::Display for BoundValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.rational())
    }
}

impl Serialize for BoundValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut state = serializer.serialize_struct("BoundValue", 2)?;
        state.serialize_field("rational", &self.rational())?;
        state.serialize_field("ceiling", &self.ceiling())?;
        state.end()
    }
}

/// The counting bound `d·|V| / (4Δ − α − 2)` for a graph with `nv`
/// vertices, average degree `d`, maximum degree `max_degree`, and
/// heaviness `α`.
///
/// Errors when the denominator is not positive. With `α = 0` the bound
/// degenerates to the plain domination count `d·|V|/(4Δ − 2)` — still
/// valid, just weaker.
pub fn lower_bound_general(
    average_degree: Ratio<i128>,
    max_degree: usize,
    alpha: usize,
    nv: u64,
) -> Result<BoundValue> {
    let denom = 4 * (max_degree as i128) - (alpha as i128) - 2;
    if denom <= 0 {
        return Err(Error::InvalidSpec(format!(
            "counting-bound denominator 4·{max_degree} − {alpha} − 2 = {denom} is not positive"
        )));
    }
    BoundValue::new(average_degree * Ratio::from_integer(nv as i128) / Ratio::from_integer(denom))
}

/// Closed-form lower bound for the permutation graph on `n` letters:
/// `n!·(n−1) / (3n−2)`.
///
/// This is the counting bound with degree `n−1` and heaviness `n−4`
/// (clamped at zero for `n ≤ 4`).
pub fn lower_bound_perm(n: usize) -> Result<BoundValue> {
    if n < 2 {
        return Err(Error::InvalidSpec(format!(
            "the permutation bound needs n ≥ 2, got {n}"
        )));
    }
    if n > crate::perm::MAX_RANKED_N {
        return Err(Error::RankingLimit {
            n,
            max: crate::perm::MAX_RANKED_N,
        });
    }
    BoundValue::new(Ratio::new(
        factorial(n) as i128 * (n as i128 - 1),
        3 * n as i128 - 2,
    ))
}

/// Closed-form lower bound for the hypercube on `n` bits:
/// `n·2ⁿ / (3n−1)`.
///
/// This is the counting bound with degree `n` and heaviness `n−1`: the
/// four-cycles through an edge in direction `i` are indexed by the other
/// directions and pairwise share only that edge.
pub fn lower_bound_cube(n: usize) -> Result<BoundValue> {
    if n == 0 || n > crate::graphs::MAX_CUBE_N {
        return Err(Error::InvalidSpec(format!(
            "the hypercube bound needs 1 ≤ n ≤ {}, got {n}",
            crate::graphs::MAX_CUBE_N
        )));
    }
    BoundValue::new(Ratio::new(
        (n as i128) << n,
        3 * n as i128 - 1,
    ))
}

/// Closed-form lower bound for a product of permutation graphs with
/// factor sizes `factors`: `(n−k)/(3n−3k+1) · ∏ nᵢ!` where `n = Σ nᵢ` and
/// `k` is the number of factors.
///
/// The product is `(n−k)`-regular and `(n−k−3)`-heavy, which the counting
/// bound turns into the formula above. It needs a largest factor of at
/// least 3; an all-2 spec is a relabeled hypercube and is routed to
/// [`lower_bound_cube`] instead.
pub fn lower_bound_product(factors: &[usize]) -> Result<BoundValue> {
    if factors.is_empty() {
        return Err(Error::InvalidSpec("empty factor list".into()));
    }
    if let Some(&bad) = factors.iter().find(|&&f| f < 2) {
        return Err(Error::InvalidSpec(format!(
            "factor {bad} is smaller than 2"
        )));
    }
    if factors.iter().all(|&f| f == 2) {
        return lower_bound_cube(factors.len());
    }
    let n: usize = factors.iter().sum();
    let k = factors.len();
    let mut nv: i128 = 1;
    for &f in factors {
        if f > crate::perm::MAX_RANKED_N {
            return Err(Error::RankingLimit {
                n: f,
                max: crate::perm::MAX_RANKED_N,
            });
        }
        nv = nv
            .checked_mul(factorial(f) as i128)
            .ok_or_else(|| Error::Overflow("product vertex count".into()))?;
    }
    BoundValue::new(
        Ratio::new((n - k) as i128, (3 * (n - k) + 1) as i128) * Ratio::from_integer(nv),
    )
}

/// How the report obtains the heaviness `α` it plugs into the counting
/// bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlphaMode {
    /// Exhaustive scan on small graphs, closed form beyond
    /// [`AUTO_ALPHA_EDGE_LIMIT`] edges.
    Auto,
    /// Always scan (subject to the cap, or the sample size when given).
    Computed,
    /// Always use the per-family closed form.
    ClosedForm,
}

impl std::fmt::Display for AlphaMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            AlphaMode::Auto => "auto",
            AlphaMode::Computed => "exact",
            AlphaMode::ClosedForm => "formula",
        })
    }
}

impl std::str::FromStr for AlphaMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<AlphaMode> {
        match s {
            "auto" => Ok(AlphaMode::Auto),
            "exact" => Ok(AlphaMode::Computed),
            "formula" => Ok(AlphaMode::ClosedForm),
            other => Err(Error::Parse(format!(
                "unknown alpha mode {other:?} (expected auto, exact, or formula)"
            ))),
        }
    }
}

/// Whether the report runs the exact solver for the optimum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExactEffort {
    /// Solve when the graph has at most [`AUTO_EXACT_EDGE_LIMIT`] edges.
    Auto,
    /// Never solve.
    Skip,
    /// Solve regardless of size (the solver's own guards still apply).
    Always,
}

/// Knobs for [`bounds_report`].
#[derive(Clone, Debug)]
pub struct ReportOptions {
    pub alpha_mode: AlphaMode,
    /// Sample this many distinct edges instead of scanning all of them.
    pub sample: Option<usize>,
    /// Seed for the edge sample.
    pub seed: u64,
    pub exact_effort: ExactEffort,
    /// Time limit handed to the exact solver.
    pub time_limit: Duration,
    /// Enumeration cap for scans and materialized witnesses.
    pub cap: u64,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            alpha_mode: AlphaMode::Auto,
            sample: None,
            seed: 0,
            exact_effort: ExactEffort::Auto,
            time_limit: Duration::from_secs(60),
            cap: crate::DEFAULT_ENUMERATION_CAP,
        }
    }
}

/// Everything the artifact can say about the minimum maximal matching
/// size of one graph, cross-checked for consistency.
#[derive(Clone, Debug, Serialize)]
pub struct BoundsReport {
    /// Family name.
    pub family: String,
    /// Human-readable instance, e.g. `"perm n=5"`.
    pub instance: String,
    pub vertices: u64,
    pub edges: u64,
    pub degree: usize,
    /// The heaviness plugged into the counting bound.
    pub alpha_used: usize,
    /// Where `alpha_used` came from.
    pub alpha_source: String,
    /// The per-family closed-form heaviness; may be negative, in which
    /// case it is vacuous and gets clamped to zero before use.
    pub alpha_closed_form: i64,
    /// True when `alpha_used` is zero and the counting bound degenerates
    /// to the plain domination count.
    pub alpha_degenerate: bool,
    /// Present when a heaviness scan ran.
    pub heaviness: Option<HeavinessReport>,
    /// Counting bound with `alpha_used`.
    pub counting_bound: BoundValue,
    /// The per-family closed-form bound.
    pub closed_form_bound: BoundValue,
    /// Size of the materialized constructive matching, when one exists
    /// and fits the cap.
    pub upper_construct: Option<u64>,
    /// Size of the layered matching, when the family has levels and fits
    /// the cap.
    pub upper_layered: Option<u64>,
    /// Proven optimum from the exact solver, when it ran to completion.
    pub exact: Option<u64>,
    /// Lower ≤ exact ≤ upper held for everything present (always true on
    /// return; a violation aborts instead of reporting nonsense).
    pub consistent: bool,
}

fn instance_name(g: &GraphHandle) -> String {
    match g.family() {
        Family::Product => {
            let parts: Vec<String> = g
                .spec()
                .expect("product has factors")
                .iter()
                .map(|f| f.to_string())
                .collect();
            format!("product spec={}", parts.join(","))
        }
        family => format!("{family} n={}", g.n().expect("single-parameter family")),
    }
}

fn closed_form_alpha(g: &GraphHandle) -> i64 {
    match g.family() {
        Family::Perm => g.n().expect("perm has n") as i64 - 4,
        Family::Cube => g.n().expect("cube has n") as i64 - 1,
        Family::Assoc => g.n().expect("assoc has n") as i64 - 5,
        Family::Product => {
            let factors = g.spec().expect("product has factors");
            let n: usize = factors.iter().sum();
            n as i64 - factors.len() as i64 - 3
        }
    }
}

fn closed_form_bound(g: &GraphHandle) -> Result<BoundValue> {
    match g.family() {
        Family::Perm => lower_bound_perm(g.n().expect("perm has n")),
        Family::Cube => lower_bound_cube(g.n().expect("cube has n")),
        Family::Product => lower_bound_product(g.spec().expect("product has factors")),
        Family::Assoc => {
            let degree = g.degree();
            let alpha = closed_form_alpha(g).max(0) as usize;
            lower_bound_general(
                Ratio::from_integer(degree as i128),
                degree,
                alpha,
                g.vertex_count(),
            )
        }
    }
}

fn construct_witness_size(g: &GraphHandle, cap: u64) -> Result<Option<u64>> {
    let qm = match QueryMatching::new(g, Variant::Circ) {
        Ok(qm) => qm,
        Err(Error::Unsupported { .. }) | Err(Error::CapExceeded { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    if g.vertex_count() > cap {
        return Ok(None);
    }
    Ok(Some(materialize(g, &qm, cap)?.size()))
}

fn layered_witness_size(g: &GraphHandle, cap: u64) -> Result<Option<u64>> {
    match layered_matching(g, cap) {
        Ok(outcome) => Ok(Some(outcome.matching.size())),
        Err(Error::Unsupported { .. }) | Err(Error::CapExceeded { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn proven_exact(g: &GraphHandle, opts: &ReportOptions) -> Result<Option<u64>> {
    let dense = DenseGraph::from_handle(g, opts.cap)?;
    let result = exact_mmm(
        &dense,
        &SolveOptions {
            time_limit: opts.time_limit,
            hard: false,
        },
    )?;
    Ok(result.proven.then_some(result.optimum))
}

/// Aggregate lower bounds, upper-bound witnesses, and (on small graphs)
/// the exact optimum for one graph.
///
/// Whenever both a lower bound and an upper witness — or the exact
/// optimum — are present, the report checks `lower ≤ exact ≤ upper` and
/// aborts on violation rather than returning an inconsistent certificate.
/// Note that a sampled `α` is only an estimate; the report marks it
/// uncertified but still plugs it in, so sampled reports are exploratory,
/// not certificates.
pub fn bounds_report(g: &GraphHandle, opts: &ReportOptions) -> Result<BoundsReport> {
    let nv = g.vertex_count();
    let ne = g.edge_count();
    if ne == 0 {
        return Err(Error::InvalidSpec(
            "bounds need a graph with at least one edge".into(),
        ));
    }
    let alpha_closed_form = closed_form_alpha(g);
    let scan = match opts.alpha_mode {
        AlphaMode::Computed => true,
        AlphaMode::ClosedForm => false,
        AlphaMode::Auto => ne <= AUTO_ALPHA_EDGE_LIMIT && nv <= opts.cap,
    };
    let heaviness = if scan {
        Some(match opts.sample {
            Some(k) => graph_heaviness_sampled(g, k, opts.seed)?,
            None => graph_heaviness(g, opts.cap)?,
        })
    } else {
        None
    };
    let (alpha_used, alpha_source) = match &heaviness {
        Some(h) if h.certified_exhaustive => (h.alpha, "computed (exhaustive)".to_string()),
        Some(h) => (h.alpha, "computed (sampled, uncertified)".to_string()),
        None => (
            alpha_closed_form.max(0) as usize,
            "closed form".to_string(),
        ),
    };

    let average_degree = Ratio::new(2 * ne as i128, nv as i128);
    let counting_bound = lower_bound_general(average_degree, g.degree(), alpha_used, nv)?;
    let closed_form_bound = closed_form_bound(g)?;
    let upper_construct = construct_witness_size(g, opts.cap)?;
    let upper_layered = layered_witness_size(g, opts.cap)?;
    let exact = match opts.exact_effort {
        ExactEffort::Skip => None,
        ExactEffort::Always => proven_exact(g, opts)?,
        ExactEffort::Auto => {
            if ne <= AUTO_EXACT_EDGE_LIMIT {
                proven_exact(g, opts)?
            } else {
                None
            }
        }
    };

    let lower = counting_bound.ceiling().max(closed_form_bound.ceiling());
    for upper in [upper_construct, upper_layered, exact].into_iter().flatten() {
        assert!(
            lower <= upper,
            "bound consistency violated: lower {lower} exceeds witness {upper}"
        );
    }
    if let Some(optimum) = exact {
        for upper in [upper_construct, upper_layered].into_iter().flatten() {
            assert!(
                optimum <= upper,
                "bound consistency violated: optimum {optimum} exceeds witness {upper}"
            );
        }
    }

    Ok(BoundsReport {
        family: g.family().to_string(),
        instance: instance_name(g),
        vertices: nv,
        edges: ne,
        degree: g.degree(),
        alpha_used,
        alpha_source,
        alpha_closed_form,
        alpha_degenerate: alpha_used == 0,
        heaviness,
        counting_bound,
        closed_form_bound,
        upper_construct,
        upper_layered,
        exact,
        consistent: true,
    })
}
