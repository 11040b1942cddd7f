//! Acceptance gate: one test per shipping criterion, each printing a
//! `[acceptance] criterion N: PASS` line with its measured runtime.
//!
//! Budgets and expected values are pinned as constants next to each test;
//! a criterion that cannot be met fails its test rather than being waived.
//! The expensive last reference-table row is a stretch target and sits
//! behind `--ignored`.

use permatch_core::bounds::{bounds_report, graph_heaviness, lower_bound_product, ReportOptions};
use permatch_core::exact::{brute_force_mmm, exact_mmm, DenseGraph, SolveOptions};
use permatch_core::layered::{
    hall_check_with, layered_matching, residue_cut, scd_chain, Direction, LevelPartition,
};
use permatch_core::matchings::{
    materialize, perm_matched_neighbor, verify_covering_pair, verify_maximal,
    verify_streaming_maximal, CubeMatching, QueryMatching, Variant,
};
use permatch_core::perm::factorial;
use permatch_core::{BitWord, GraphHandle, Permutation, DEFAULT_ENUMERATION_CAP};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

fn pass(criterion: &str, elapsed: Duration, budget: Duration, detail: &str) {
    assert!(
        elapsed <= budget,
        "criterion {criterion}: {detail} took {elapsed:.2?}, over the {budget:?} budget"
    );
    println!("[acceptance] criterion {criterion}: PASS — {detail} in {elapsed:.2?} (budget {budget:?})");
}

fn binary(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_permatch"))
        .args(args)
        .env_remove("PERMATCH_CAP")
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).expect("stdout is UTF-8"),
        out.status.code().expect("no signal"),
    )
}

/// Criterion 1: the reference-table command reproduces the rows
/// (2,1,1,1), (5,5,2,2), (14,21,5,6), (42,84,14,16) exactly, within a
/// minute.
#[test]
fn criterion_01_reference_table_rows() {
    const EXPECTED: [(u64, u64, u64, u64, u64); 4] =
        [(2, 2, 1, 1, 1), (3, 5, 5, 2, 2), (4, 14, 21, 5, 6), (5, 42, 84, 14, 16)];
    const BUDGET: Duration = Duration::from_secs(60);

    let start = Instant::now();
    let (stdout, code) = binary(&["table1", "--n-max", "5"]);
    let elapsed = start.elapsed();
    assert_eq!(code, 0, "table1 must succeed");
    let rows: Vec<serde_json::Value> = stdout
        .lines()
        .map(|line| serde_json::from_str(line).expect("row is JSON"))
        .collect();
    assert_eq!(rows.len(), EXPECTED.len());
    for (row, (n, v, e, m, i)) in rows.iter().zip(EXPECTED) {
        assert_eq!(row["n"].as_u64(), Some(n));
        assert_eq!(row["vertices"].as_u64(), Some(v), "row n={n}");
        assert_eq!(row["edges"].as_u64(), Some(e), "row n={n}");
        assert_eq!(row["matching"].as_u64(), Some(m), "row n={n}");
        assert_eq!(row["independent"].as_u64(), Some(i), "row n={n}");
        assert_eq!(row["status"].as_str(), Some("ok"), "row n={n}");
    }
    pass("1", elapsed, BUDGET, "reference table rows n=2..5 reproduced");
}

/// Criterion 1, stretch: the n=6 row (132, 330, 44, 50) within a two-hour
/// budget. A timeout that still reports best-found 44 with a proven lower
/// bound of at least 40 is accepted.
#[test]
#[ignore = "stretch target: run with --ignored and a two-hour budget"]
fn criterion_01_stretch_last_row() {
    let start = Instant::now();
    let (stdout, code) = binary(&["table1", "--n-max", "6", "--hard", "--time-limit", "7200"]);
    let elapsed = start.elapsed();
    assert_eq!(code, 0, "table1 must not report a proven mismatch");
    let last: serde_json::Value =
        serde_json::from_str(stdout.lines().last().expect("rows printed")).expect("row is JSON");
    assert_eq!(last["n"].as_u64(), Some(6));
    assert_eq!(last["vertices"].as_u64(), Some(132));
    assert_eq!(last["edges"].as_u64(), Some(330));
    match last["status"].as_str() {
        Some("ok") => {
            assert_eq!(last["matching"].as_u64(), Some(44));
            assert_eq!(last["independent"].as_u64(), Some(50));
        }
        Some("unproven") => {
            assert_eq!(last["matching"].as_u64(), Some(44), "best-found must reach 44");
            let lb = last["lower_bound"].as_u64().expect("timeout rows carry a bound");
            assert!(lb >= 40, "proven lower bound {lb} must reach 40");
        }
        other => panic!("unexpected status {other:?}"),
    }
    println!("[acceptance] criterion 1 (stretch): PASS — n=6 row in {elapsed:.2?}");
}

/// Criterion 2: the circ matching on the five-letter graph equals the
/// reference listing — the same 40 edges and 40 exposed words, as sets —
/// within a second.
#[test]
fn criterion_02_five_letter_golden_listing() {
    const BUDGET: Duration = Duration::from_secs(1);
    const EDGES: [(&str, &str); 40] = [
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
    const EXPOSED: [&str; 40] = [
        "12354", "13524", "21345", "23541", "31245", "34125", "41253", "43215", "51234", "53241",
        "12435", "14325", "21453", "24513", "31542", "34521", "42135", "45123", "51342", "54132",
        "12543", "14532", "21534", "25314", "32154", "35214", "42351", "45231", "52143", "54213",
        "13452", "15423", "23415", "25431", "32451", "35412", "43152", "45312", "53124", "54321",
    ];

    let start = Instant::now();
    let g = GraphHandle::perm(5).unwrap();
    let qm = QueryMatching::new(&g, Variant::Circ).unwrap();
    let m = materialize(&g, &qm, DEFAULT_ENUMERATION_CAP).unwrap();

    let got_edges: BTreeSet<(String, String)> = m
        .edges
        .iter()
        .map(|&(a, b)| {
            (
                g.decode(a).unwrap().to_string(),
                g.decode(b).unwrap().to_string(),
            )
        })
        .collect();
    let want_edges: BTreeSet<(String, String)> = EDGES
        .iter()
        .map(|&(a, b)| {
            let (a, b) = if a < b { (a, b) } else { (b, a) };
            (a.to_string(), b.to_string())
        })
        .collect();
    assert_eq!(got_edges, want_edges, "edge sets must agree");

    let got_exposed: BTreeSet<String> = m
        .exposed
        .iter()
        .map(|&c| g.decode(c).unwrap().to_string())
        .collect();
    let want_exposed: BTreeSet<String> = EXPOSED.iter().map(|w| w.to_string()).collect();
    assert_eq!(got_exposed, want_exposed, "exposed sets must agree");
    let elapsed = start.elapsed();
    pass("2", elapsed, BUDGET, "40 edges and 40 exposed words match the listing");
}

/// Criterion 3: both variants have exactly n!/3 edges and are maximal —
/// exhaustively for n = 3..7, and for n = 8 (13440 edges) by a streaming
/// scan — within five minutes.
#[test]
fn criterion_03_sizes_and_maximality() {
    const BUDGET: Duration = Duration::from_secs(300);
    let start = Instant::now();
    for n in 3..=7usize {
        let g = GraphHandle::perm(n).unwrap();
        for variant in [Variant::Bullet, Variant::Circ] {
            let qm = QueryMatching::new(&g, variant).unwrap();
            let m = materialize(&g, &qm, DEFAULT_ENUMERATION_CAP).unwrap();
            assert_eq!(m.size(), factorial(n) / 3, "size at n={n} {variant}");
            assert!(
                verify_maximal(&g, &m.edges).unwrap(),
                "maximality at n={n} {variant}"
            );
        }
    }
    let g = GraphHandle::perm(8).unwrap();
    for variant in [Variant::Bullet, Variant::Circ] {
        let qm = QueryMatching::new(&g, variant).unwrap();
        let mut matched = 0u64;
        for code in 0..g.vertex_count() {
            if qm
                .matched_neighbor(&g.decode(code).unwrap())
                .unwrap()
                .is_some()
            {
                matched += 1;
            }
        }
        assert_eq!(matched / 2, 13440, "size at n=8 {variant}");
        assert!(
            verify_streaming_maximal(&g, &qm).unwrap(),
            "streaming maximality at n=8 {variant}"
        );
    }
    let elapsed = start.elapsed();
    pass("3", elapsed, BUDGET, "n!/3 size and maximality for n=3..8, both variants");
}

/// Criterion 4: the sandwich ceil(n!(n−1)/(3n−2)) ≤ witness ≤ n!/3 holds
/// for n = 3..8, and the exact solver proves the four-letter optimum is 8,
/// within thirty seconds.
#[test]
fn criterion_04_sandwich_bounds() {
    const BUDGET: Duration = Duration::from_secs(30);
    // ceil(n!(n−1)/(3n−2)) for n = 3..8.
    const LOWER: [(usize, u64); 6] =
        [(3, 2), (4, 8), (5, 37), (6, 225), (7, 1592), (8, 12830)];

    let start = Instant::now();
    for (n, want_lower) in LOWER {
        let lower = factorial(n) * (n as u64 - 1);
        let denom = 3 * n as u64 - 2;
        assert_eq!(lower.div_ceil(denom), want_lower, "pinned ceiling at n={n}");

        let g = GraphHandle::perm(n).unwrap();
        let report = bounds_report(&g, &ReportOptions::default()).unwrap();
        assert_eq!(report.closed_form_bound.ceiling(), want_lower, "bound at n={n}");
        let witness = report.upper_construct.expect("construction fits the cap");
        assert_eq!(witness, factorial(n) / 3, "witness size at n={n}");
        assert!(want_lower <= witness, "sandwich at n={n}");
        assert!(report.counting_bound.ceiling() <= witness, "counting at n={n}");
        assert!(report.consistent);
        if n == 4 {
            assert_eq!(report.exact, Some(8), "four-letter optimum is proven");
            assert_eq!(report.closed_form_bound.ceiling(), 8);
            assert_eq!(witness, 8);
        }
    }
    let elapsed = start.elapsed();
    pass("4", elapsed, BUDGET, "sandwich bounds for n=3..8 with the n=4 optimum proven");
}

/// Criterion 5: exhaustive scans confirm the hypercube is exactly
/// (n−1)-heavy for n ≤ 5 and every edge of the permutation graph is at
/// least (n−4)-heavy for n ≤ 6, within two minutes.
#[test]
fn criterion_05_heaviness_scans() {
    const BUDGET: Duration = Duration::from_secs(120);
    let start = Instant::now();
    for n in 1..=5usize {
        let g = GraphHandle::cube(n).unwrap();
        let report = graph_heaviness(&g, DEFAULT_ENUMERATION_CAP).unwrap();
        assert!(report.certified_exhaustive);
        assert_eq!(report.alpha, n - 1, "cube heaviness at n={n}");
    }
    for n in 3..=6usize {
        let g = GraphHandle::perm(n).unwrap();
        let report = graph_heaviness(&g, DEFAULT_ENUMERATION_CAP).unwrap();
        assert!(report.certified_exhaustive);
        let min_value = report
            .value_counts
            .iter()
            .map(|&(value, _)| value as i64)
            .min()
            .expect("graph has edges");
        assert!(
            min_value >= n as i64 - 4,
            "per-edge heaviness at n={n}: min {min_value}"
        );
    }
    let elapsed = start.elapsed();
    pass("5", elapsed, BUDGET, "cube heaviness n−1 (n≤5) and per-edge ≥ n−4 (n≤6)");
}

/// Criterion 6: every level saturation the layered construction relies on
/// passes, the assembled matchings are maximal, and their sizes respect
/// |V|/3 + 6·(max middle level) — for the permutation graphs up to n=6 and
/// the hypercubes up to n=10 — within two minutes.
#[test]
fn criterion_06_layered_pipeline() {
    const BUDGET: Duration = Duration::from_secs(120);
    let start = Instant::now();
    let mut instances: Vec<GraphHandle> = (3..=6).map(|n| GraphHandle::perm(n).unwrap()).collect();
    instances.extend((1..=10).map(|n| GraphHandle::cube(n).unwrap()));

    for g in &instances {
        let lp = LevelPartition::new(g, DEFAULT_ENUMERATION_CAP).unwrap();
        let top = lp.top();
        let sizes = lp.sizes();
        let residue = residue_cut(&sizes);
        let (lo_mid, hi_mid) = (top / 2, top.div_ceil(2));
        for k in 1..top {
            if k % 3 != residue % 3 || k == lo_mid || k == hi_mid {
                continue;
            }
            // An upward block at k needs k−1 to saturate into k and k into
            // k+1 (leftovers are a subset); downward is the mirror image.
            let checks: [(usize, Direction); 2] = if k < lo_mid {
                [(k - 1, Direction::Up), (k, Direction::Up)]
            } else {
                [(k + 1, Direction::Down), (k, Direction::Down)]
            };
            for (level, direction) in checks {
                assert!(
                    hall_check_with(g, &lp, level, direction).unwrap(),
                    "saturation of level {level} ({direction:?}) in {} n={:?}",
                    g.family(),
                    g.n()
                );
            }
        }

        let outcome = layered_matching(g, DEFAULT_ENUMERATION_CAP).unwrap();
        assert!(
            verify_maximal(g, &outcome.matching.edges).unwrap(),
            "layered matching must be maximal"
        );
        let max_mid = sizes[lo_mid].max(sizes[hi_mid]);
        assert!(
            3 * outcome.matching.size() <= g.vertex_count() + 18 * max_mid,
            "size bound violated"
        );
    }

    // The ten-dimensional cube, with its pinned middle level of 252.
    let g = GraphHandle::cube(10).unwrap();
    let outcome = layered_matching(&g, DEFAULT_ENUMERATION_CAP).unwrap();
    assert!(3 * outcome.matching.size() <= 1024 + 18 * 252);
    let elapsed = start.elapsed();
    pass("6", elapsed, BUDGET, "saturation checks and layered matchings for perm n≤6, cube n≤10");
}

/// Criterion 7: the pinned chain through 1000110, and the chains partition
/// the hypercube's vertices for every n ≤ 12, within thirty seconds.
#[test]
fn criterion_07_symmetric_chains() {
    const BUDGET: Duration = Duration::from_secs(30);
    let start = Instant::now();

    let chain = scd_chain(&BitWord::parse("1000110").unwrap());
    let words: Vec<String> = chain.iter().map(|w| w.to_string()).collect();
    assert_eq!(words, ["0000110", "1000110", "1100110", "1100111"]);

    for n in 1..=12usize {
        let count = 1u64 << n;
        let mut seen = vec![false; count as usize];
        for code in 0..count {
            let word = BitWord::new(n, code).unwrap();
            let chain = scd_chain(&word);
            assert!(chain.contains(&word), "chain through a word contains it");
            if chain[0] != word {
                continue; // counted at its bottom word
            }
            for link in &chain {
                let idx = link.bits() as usize;
                assert!(!seen[idx], "chains overlap at {link} (n={n})");
                seen[idx] = true;
            }
            // Every member agrees on the whole chain.
            for link in &chain {
                assert_eq!(scd_chain(link), chain, "chain is member-independent");
            }
        }
        assert!(seen.iter().all(|&s| s), "chains must cover all of dimension {n}");
    }
    let elapsed = start.elapsed();
    pass("7", elapsed, BUDGET, "pinned chain and partition of the cube for n≤12");
}

/// Criterion 8: on the product graphs (4,2), (3,3), (3,2,2), (4,3) both
/// variants are maximal matchings of size |V|/3, they cover every vertex
/// between them, and each size clears the counting lower bound; the all-2
/// spec behaves as a hypercube — within a minute.
#[test]
fn criterion_08_product_matchings() {
    const BUDGET: Duration = Duration::from_secs(60);
    // spec, |V|, matching size |V|/3, pinned bound ceil((n−k)|V|/(3n−3k+1)).
    const CASES: [(&[usize], u64, u64, u64); 4] = [
        (&[4, 2], 48, 16, 15),
        (&[3, 3], 36, 12, 12),
        (&[3, 2, 2], 24, 8, 8),
        (&[4, 3], 144, 48, 45),
    ];

    let start = Instant::now();
    for (spec, vertices, size, bound) in CASES {
        let g = GraphHandle::product(spec).unwrap();
        assert_eq!(g.vertex_count(), vertices);
        let mut built = Vec::new();
        for variant in [Variant::Bullet, Variant::Circ] {
            let qm = QueryMatching::new(&g, variant).unwrap();
            let m = materialize(&g, &qm, DEFAULT_ENUMERATION_CAP).unwrap();
            assert_eq!(m.size(), size, "size of {variant} on {spec:?}");
            assert!(verify_maximal(&g, &m.edges).unwrap(), "{variant} on {spec:?}");
            built.push(m);
        }
        assert!(
            verify_covering_pair(&built[0], &built[1]),
            "the two variants must cover every vertex of {spec:?}"
        );
        let lower = lower_bound_product(spec).unwrap().ceiling();
        assert_eq!(lower, bound, "pinned bound for {spec:?}");
        assert!(lower <= size);
    }

    // All factors of two: the product is a hypercube in disguise; the
    // variant is irrelevant there and the chain matching takes over.
    let g = GraphHandle::product(&[2, 2, 2, 2]).unwrap();
    let bullet = materialize(
        &g,
        &QueryMatching::new(&g, Variant::Bullet).unwrap(),
        DEFAULT_ENUMERATION_CAP,
    )
    .unwrap();
    let circ = materialize(
        &g,
        &QueryMatching::new(&g, Variant::Circ).unwrap(),
        DEFAULT_ENUMERATION_CAP,
    )
    .unwrap();
    assert_eq!(bullet, circ, "all-2 spec ignores the variant");
    assert!(verify_maximal(&g, &bullet.edges).unwrap());
    assert_eq!(
        bullet.size(),
        CubeMatching::new(4).unwrap().size(),
        "all-2 spec matches the four-cube chain matching"
    );
    let elapsed = start.elapsed();
    pass("8", elapsed, BUDGET, "product matchings, covering pairs, and bounds");
}

/// Criterion 9: the branch-and-bound solver agrees with subset-enumeration
/// brute force on a 50-graph corpus of graphs with at most ten edges.
#[test]
fn criterion_09_oracle_equivalence() {
    let mut corpus: Vec<(String, String)> = Vec::new();

    // Paths with 1..=5 edges.
    for len in 1..=5usize {
        let text: String = (0..len).map(|i| format!("v{} v{}\n", i, i + 1)).collect();
        corpus.push((format!("path with {len} edges"), text));
    }
    // Cycles with 3..=8 edges.
    for len in 3..=8usize {
        let text: String = (0..len)
            .map(|i| format!("v{} v{}\n", i, (i + 1) % len))
            .collect();
        corpus.push((format!("cycle with {len} edges"), text));
    }
    // Stars with 3..=6 rays.
    for rays in 3..=6usize {
        let text: String = (1..=rays).map(|i| format!("hub v{i}\n")).collect();
        corpus.push((format!("star with {rays} rays"), text));
    }
    // The complete graph on four vertices and the 2-by-3 complete
    // bipartite graph.
    corpus.push((
        "complete on four vertices".into(),
        "a b\na c\na d\nb c\nb d\nc d\n".into(),
    ));
    corpus.push((
        "complete bipartite 2x3".into(),
        "a x\na y\na z\nb x\nb y\nb z\n".into(),
    ));

    // Seeded random connected graphs: a spanning tree plus extra edges,
    // capped at ten edges.
    let mut rng = ChaCha8Rng::seed_from_u64(0x0933_ACCE);
    while corpus.len() < 50 {
        let vertices = rng.gen_range(4..=8usize);
        let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
        for v in 1..vertices {
            let parent = rng.gen_range(0..v);
            edges.insert((parent, v));
        }
        let budget = rng.gen_range(edges.len()..=10usize);
        let mut attempts = 0;
        while edges.len() < budget && attempts < 100 {
            attempts += 1;
            let a = rng.gen_range(0..vertices);
            let b = rng.gen_range(0..vertices);
            if a != b {
                edges.insert((a.min(b), a.max(b)));
            }
        }
        let text: String = edges
            .iter()
            .map(|(a, b)| format!("v{a} v{b}\n"))
            .collect();
        corpus.push((format!("random graph {}", corpus.len()), text));
    }
    assert_eq!(corpus.len(), 50);

    let start = Instant::now();
    for (name, text) in &corpus {
        let g = DenseGraph::from_edge_list(text).unwrap();
        assert!(g.edge_count() <= 10, "{name} must stay within ten edges");
        let solved = exact_mmm(&g, &SolveOptions::default()).unwrap();
        let brute = brute_force_mmm(&g).unwrap();
        assert!(solved.proven, "{name} must be solved to optimality");
        assert_eq!(solved.optimum, brute, "oracle disagreement on {name}");
    }
    let elapsed = start.elapsed();
    pass(
        "9",
        elapsed,
        Duration::from_secs(60),
        "solver equals brute force on all 50 corpus graphs",
    );
}

/// Criterion 10: at a thousand letters, 100000 matched-neighbor queries
/// answer in under a second in total — linear time per query, no
/// factorial-size state anywhere.
#[test]
fn criterion_10_query_performance() {
    const BUDGET: Duration = Duration::from_secs(1);
    const WORD_LEN: usize = 1000;
    const QUERIES: usize = 100_000;
    const DISTINCT: usize = 10_000;

    let mut rng = ChaCha8Rng::seed_from_u64(0x10_0E55);
    let words: Vec<Permutation> = (0..DISTINCT)
        .map(|_| {
            let mut letters: Vec<u32> = (1..=WORD_LEN as u32).collect();
            for i in (1..letters.len()).rev() {
                letters.swap(i, rng.gen_range(0..=i));
            }
            Permutation::new(letters).unwrap()
        })
        .collect();
    let schedule: Vec<(usize, Variant)> = (0..QUERIES)
        .map(|_| {
            let idx = rng.gen_range(0..DISTINCT);
            let variant = if rng.gen_bool(0.5) { Variant::Bullet } else { Variant::Circ };
            (idx, variant)
        })
        .collect();

    let start = Instant::now();
    let mut matched = 0u64;
    let mut swap_total = 0u64;
    for &(idx, variant) in &schedule {
        if let Some((neighbor, swap)) = perm_matched_neighbor(&words[idx], variant).unwrap() {
            matched += 1;
            swap_total += swap as u64;
            std::hint::black_box(&neighbor);
        }
    }
    let elapsed = start.elapsed();
    std::hint::black_box((matched, swap_total));
    assert!(matched > 0, "some queries must be matched");
    pass(
        "10",
        elapsed,
        BUDGET,
        &format!("{QUERIES} queries at {WORD_LEN} letters ({matched} matched)"),
    );
}
