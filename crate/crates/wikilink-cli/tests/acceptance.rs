//! Acceptance suite: one test per release criterion, each printing a PASS
//! line once its assertions hold (run with `--nocapture` to see them).
//!
//! Covers: the published-table arithmetic fixtures, oracle equivalence for
//! enrichment and SCC on randomized instances, the connectivity monotonicity
//! guarantees, trend reproduction and linear-runtime scaling on synthetic
//! corpora, format round-trips, and byte-identical pipeline reruns.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wikilink::analysis::{compare, metrics, tarjan_scc};
use wikilink::ingest::{
    load_graph_jsonl, parse_sql_dump, write_graph_jsonl, DumpRecord, DumpTable, LangLinkRow,
    PageRow,
};
use wikilink::{enrich, generate_fixture, GraphMetrics, PageGraph, PageTitle, TitleMapping};

fn t(s: &str) -> PageTitle {
    PageTitle::new(s).unwrap()
}

fn title(prefix: &str, i: usize) -> PageTitle {
    t(&format!("{prefix}{i}"))
}

fn edge_set(g: &PageGraph) -> BTreeSet<(String, String)> {
    g.edges()
        .map(|(s, d)| (s.to_string(), d.to_string()))
        .collect()
}

fn random_graph(prefix: &str, nodes: usize, max_edge_factor: usize, rng: &mut ChaCha8Rng) -> PageGraph {
    let mut g = PageGraph::new();
    for i in 0..nodes {
        g.add_node(title(prefix, i));
    }
    let edges = rng.random_range(0..=max_edge_factor * nodes);
    for _ in 0..edges {
        let s = rng.random_range(0..nodes);
        let d = rng.random_range(0..nodes);
        if s != d {
            g.add_edge(title(prefix, s), title(prefix, d));
        }
    }
    g
}

// ---------------------------------------------------------------------------
// Criterion: table arithmetic fixtures

#[test]
fn acceptance_table_arithmetic_fixtures() {
    // Raw counts -> every printed percentage, exact to 2 decimals.
    let vanilla = GraphMetrics::from_counts(44670, 25338, 14.91, 456);
    let enriched = GraphMetrics::from_counts(44670, 27366, 26.83, 13537);
    let combined = GraphMetrics::from_counts(44670, 36309, 34.84, 218);

    assert_eq!(vanilla.largest_scc_pct, 56.72);
    assert_eq!(enriched.largest_scc_pct, 61.26);
    assert_eq!(combined.largest_scc_pct, 81.28);
    assert_eq!(vanilla.deadend_pct, 1.02);
    assert_eq!(enriched.deadend_pct, 30.30);
    assert_eq!(combined.deadend_pct, 0.49);

    let report = compare(vanilla, enriched, combined).unwrap();
    assert_eq!(report.scc_improvement_pct, Some(43.30));
    assert_eq!(report.degree_improvement_pct, Some(133.67));
    assert_eq!(report.deadend_reduction_pct, Some(52.19));

    println!("acceptance table_arithmetic_fixtures: PASS");
}

// ---------------------------------------------------------------------------
// Criterion: enrichment oracle equivalence

/// Brute-force projection: triple loop over small pages and the entire large
/// edge list, mapping targets back.
fn enrich_oracle(
    small: &PageGraph,
    large: &PageGraph,
    mapping: &TitleMapping,
) -> BTreeSet<(String, String)> {
    let mut edges = BTreeSet::new();
    for v in small.nodes() {
        let Some(counterpart) = mapping.small_to_large(v) else {
            continue;
        };
        for (source, target) in large.edges() {
            if source != counterpart {
                continue;
            }
            if let Some(w) = mapping.large_to_small(target) {
                if small.contains_node(w) && w != v {
                    edges.insert((v.to_string(), w.to_string()));
                }
            }
        }
    }
    edges
}

fn random_enrich_instance(rng: &mut ChaCha8Rng) -> (PageGraph, PageGraph, TitleMapping) {
    let small_n = rng.random_range(1..=64);
    let large_n = rng.random_range(1..=64);
    let small = random_graph("s", small_n, 3, rng);
    let large = random_graph("l", large_n, 3, rng);
    let pair_count = rng.random_range(0..=16.min(small_n).min(large_n));
    let smalls = rand::seq::index::sample(rng, small_n, pair_count);
    let larges = rand::seq::index::sample(rng, large_n, pair_count);
    let (mapping, discarded) = TitleMapping::from_pairs(
        smalls
            .iter()
            .zip(larges.iter())
            .map(|(s, l)| (title("s", s), title("l", l))),
    );
    assert_eq!(discarded, 0);
    (small, large, mapping)
}

#[test]
fn acceptance_enrichment_oracle_equivalence() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xE0E0);
    for case in 0..1000 {
        let (small, large, mapping) = random_enrich_instance(&mut rng);
        let (result, stats) = enrich(&small, &large, &mapping);
        let expected = enrich_oracle(&small, &large, &mapping);
        assert_eq!(edge_set(&result), expected, "instance {case} diverged");
        let small_nodes: BTreeSet<_> = small.nodes().collect();
        let result_nodes: BTreeSet<_> = result.nodes().collect();
        assert_eq!(small_nodes, result_nodes, "instance {case} changed nodes");
        assert!(stats.edges_created <= stats.neighbors_scanned);
        assert!(stats.pages_mapped <= stats.pages_total);
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed < Duration::from_secs(30),
        "1000 instances took {elapsed:?}, budget 30s"
    );
    println!("acceptance enrichment_oracle_equivalence: PASS (1000 instances in {elapsed:?})");
}

// ---------------------------------------------------------------------------
// Criterion: SCC oracle equivalence

fn scc_closure_oracle(graph: &PageGraph) -> BTreeSet<BTreeSet<String>> {
    let nodes: Vec<&PageTitle> = graph.nodes().collect();
    let n = nodes.len();
    let index: BTreeMap<&PageTitle, usize> =
        nodes.iter().enumerate().map(|(i, t)| (*t, i)).collect();
    let mut reach = vec![vec![false; n]; n];
    for (i, node) in nodes.iter().enumerate() {
        let mut stack = vec![*node];
        while let Some(cur) = stack.pop() {
            let ci = index[cur];
            if reach[i][ci] {
                continue;
            }
            reach[i][ci] = true;
            stack.extend(graph.out_neighbors(cur));
        }
    }
    let mut taken = vec![false; n];
    let mut partition = BTreeSet::new();
    for i in 0..n {
        if taken[i] {
            continue;
        }
        let mut component = BTreeSet::new();
        for j in 0..n {
            if reach[i][j] && reach[j][i] {
                taken[j] = true;
                component.insert(nodes[j].to_string());
            }
        }
        partition.insert(component);
    }
    partition
}

#[test]
fn acceptance_scc_oracle_equivalence() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5CC);
    for case in 0..1000 {
        let g = random_graph("n", rng.random_range(1..=64), 4, &mut rng);
        let result = tarjan_scc(&g);
        let got: BTreeSet<BTreeSet<String>> = result
            .components
            .iter()
            .map(|c| c.iter().map(|n| n.to_string()).collect())
            .collect();
        assert_eq!(got, scc_closure_oracle(&g), "graph {case} diverged");
        let covered: usize = result.components.iter().map(Vec::len).sum();
        assert_eq!(covered, g.node_count(), "graph {case} partition incomplete");
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed < Duration::from_secs(60),
        "1000 graphs took {elapsed:?}, budget 60s"
    );
    println!("acceptance scc_oracle_equivalence: PASS (1000 graphs in {elapsed:?})");
}

// ---------------------------------------------------------------------------
// Criterion: monotonicity of the combined graph

#[test]
fn acceptance_monotonicity_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x30B0);
    for case in 0..500 {
        // Half the pairs come from the real projection pipeline, half are
        // arbitrary same-universe graphs.
        let (vanilla, enriched) = if case % 2 == 0 {
            let (small, large, mapping) = random_enrich_instance(&mut rng);
            let (enriched, _) = enrich(&small, &large, &mapping);
            (small, enriched)
        } else {
            let n = rng.random_range(1..=48);
            (random_graph("n", n, 2, &mut rng), random_graph("n", n, 2, &mut rng))
        };
        let (combined, _) = vanilla.combine(&enriched);
        let before = metrics(&vanilla);
        let after = metrics(&combined);
        assert!(
            after.largest_scc >= before.largest_scc,
            "case {case}: SCC shrank ({} -> {})",
            before.largest_scc,
            after.largest_scc
        );
        assert!(
            after.deadend_count <= before.deadend_count,
            "case {case}: dead ends grew ({} -> {})",
            before.deadend_count,
            after.deadend_count
        );
        assert!(
            after.avg_degree >= before.avg_degree,
            "case {case}: degree dropped ({} -> {})",
            before.avg_degree,
            after.avg_degree
        );
    }
    println!("acceptance monotonicity_suite: PASS (500 pairs)");
}

// ---------------------------------------------------------------------------
// Criterion: trend reproduction on the synthetic corpus

#[test]
fn acceptance_trend_reproduction() {
    let (small, large, mapping) = generate_fixture(7, 5000, 50_000, 0.7, 25.0).unwrap();
    let (enriched, stats) = enrich(&small, &large, &mapping);
    let (combined, _) = small.combine(&enriched);

    assert_eq!(stats.pages_mapped, 3500);

    let vanilla_m = metrics(&small);
    let combined_m = metrics(&combined);
    assert!(
        combined_m.largest_scc > vanilla_m.largest_scc,
        "SCC did not strictly grow: {} -> {}",
        vanilla_m.largest_scc,
        combined_m.largest_scc
    );
    assert!(
        combined_m.avg_degree > vanilla_m.avg_degree,
        "degree did not strictly grow: {} -> {}",
        vanilla_m.avg_degree,
        combined_m.avg_degree
    );
    assert!(
        combined_m.deadend_count < vanilla_m.deadend_count,
        "dead ends did not strictly drop: {} -> {}",
        vanilla_m.deadend_count,
        combined_m.deadend_count
    );
    println!(
        "acceptance trend_reproduction: PASS (SCC {} -> {}, degree {:.2} -> {:.2}, dead ends {} -> {})",
        vanilla_m.largest_scc,
        combined_m.largest_scc,
        vanilla_m.avg_degree,
        combined_m.avg_degree,
        vanilla_m.deadend_count,
        combined_m.deadend_count
    );
}

// ---------------------------------------------------------------------------
// Criterion: linear-time enrichment at scale

fn time_enrich(small: &PageGraph, large: &PageGraph, mapping: &TitleMapping) -> Duration {
    let mut best = Duration::MAX;
    for _ in 0..5 {
        let started = Instant::now();
        let (result, stats) = enrich(small, large, mapping);
        let elapsed = started.elapsed();
        assert!(result.edge_count() >= 1);
        assert!(stats.pages_mapped >= 1);
        best = best.min(elapsed);
    }
    best
}

#[test]
fn acceptance_performance_linear_scaling() {
    let setup_started = Instant::now();
    let (small, large, mapping) = generate_fixture(97, 100_000, 1_000_000, 1.0, 25.0).unwrap();
    eprintln!(
        "perf setup: large graph {} nodes / {} edges in {:?}",
        large.node_count(),
        large.edge_count(),
        setup_started.elapsed()
    );

    // Headline bound: the full 100k-page corpus against the million-page
    // graph. Memory stays proportional to nodes+edges by construction
    // (interned titles, one adjacency set per node).
    let full = time_enrich(&small, &large, &mapping);
    assert!(
        full < Duration::from_secs(60),
        "enrich took {full:?}, budget 60s"
    );

    // Scaling: prefixes of the small corpus at 25k / 50k / 100k pages against
    // the same large graph. Each doubling may at most ~double the runtime
    // (slope within 1.5x of linear).
    let sizes = [25_000usize, 50_000, 100_000];
    let mut timings = Vec::new();
    for &k in &sizes {
        let mut sub_small = PageGraph::new();
        for node in small.nodes().take(k) {
            sub_small.add_node(node.clone());
        }
        let (sub_mapping, _) = TitleMapping::from_pairs(
            small
                .nodes()
                .take(k)
                .filter_map(|n| mapping.small_to_large(n).map(|l| (n.clone(), l.clone()))),
        );
        assert_eq!(sub_mapping.len(), k);
        timings.push(time_enrich(&sub_small, &large, &sub_mapping));
    }
    eprintln!("perf timings at {sizes:?}: {timings:?}");
    for pair in timings.windows(2) {
        let ratio = pair[1].as_secs_f64() / pair[0].as_secs_f64().max(1e-9);
        assert!(
            ratio <= 3.0,
            "doubling the corpus scaled runtime by {ratio:.2}x (> 2.0 * 1.5 slack); timings {timings:?}"
        );
    }
    println!(
        "acceptance performance_linear_scaling: PASS (full corpus {full:?}, scaling {timings:?})"
    );
}

// ---------------------------------------------------------------------------
// Criterion: format round-trips

#[test]
fn acceptance_format_roundtrip() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xF0F0);
    for case in 0..500 {
        let g = random_graph("Page ", rng.random_range(1..=40), 3, &mut rng);
        let mut bytes = Vec::new();
        write_graph_jsonl(&g, &mut bytes).unwrap();
        let reloaded = load_graph_jsonl(bytes.as_slice()).unwrap();
        assert_eq!(reloaded, g, "graph {case} did not round-trip");
    }

    // SQL fixture: escaped quotes, multi-row inserts, ignored DDL.
    let dump = "\
-- MySQL dump fixture
/*!40101 SET @saved_cs_client = @@character_set_client */;
DROP TABLE IF EXISTS `langlinks`;
CREATE TABLE `langlinks` (
  `ll_from` int(8) unsigned NOT NULL DEFAULT '0',
  `ll_lang` varbinary(20) NOT NULL DEFAULT '',
  `ll_title` varbinary(255) NOT NULL DEFAULT ''
) ENGINE=InnoDB DEFAULT CHARSET=binary;
LOCK TABLES `langlinks` WRITE;
/*!40000 ALTER TABLE `langlinks` DISABLE KEYS */;
INSERT INTO `langlinks` VALUES (1,'sco','Glesga'),(2,'sco','O\\'Neill'),(3,'zh-min-nan','Sin_Tang-iunn');
INSERT INTO `langlinks` VALUES (4,'sco','Auld''s_Brig'),(5,'fr','Écosse');
/*!40000 ALTER TABLE `langlinks` ENABLE KEYS */;
UNLOCK TABLES;
";
    let link = |from: u64, lang: &str, title: &str| {
        DumpRecord::LangLink(LangLinkRow {
            from_page_id: from,
            lang_code: lang.to_owned(),
            target_title: title.to_owned(),
        })
    };
    let records = parse_sql_dump(dump.as_bytes(), DumpTable::Langlinks).unwrap();
    assert_eq!(
        records,
        vec![
            link(1, "sco", "Glesga"),
            link(2, "sco", "O'Neill"),
            link(3, "zh-min-nan", "Sin_Tang-iunn"),
            link(4, "sco", "Auld's_Brig"),
            link(5, "fr", "Écosse"),
        ]
    );

    let page_dump = "\
CREATE TABLE `page` (`page_id` int(8) unsigned NOT NULL);
INSERT INTO `page` VALUES (10,0,'Glasgow','',0,0,0.28,'20150901000000',NULL,101,2048,NULL,NULL),(11,1,'Talk:Glasgow','',0,0,0.5,'20150901000000',NULL,102,64,NULL,NULL),(12,0,'River_Clyde','',0,0,0.91,'20150901000000',NULL,103,512,NULL,NULL);
";
    let page = |id: u64, title: &str| {
        DumpRecord::Page(PageRow {
            page_id: id,
            namespace: 0,
            title: title.to_owned(),
        })
    };
    let records = parse_sql_dump(page_dump.as_bytes(), DumpTable::Page).unwrap();
    assert_eq!(records, vec![page(10, "Glasgow"), page(12, "River_Clyde")]);

    println!("acceptance format_roundtrip: PASS (500 graphs + SQL fixtures)");
}

// ---------------------------------------------------------------------------
// Criterion: byte-identical pipeline reruns

fn tree_bytes(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    fn walk(root: &Path, dir: &Path, out: &mut BTreeMap<String, Vec<u8>>) {
        for entry in std::fs::read_dir(dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                walk(root, &path, out);
            } else {
                let rel = path.strip_prefix(root).unwrap().to_string_lossy().into_owned();
                out.insert(rel, std::fs::read(&path).unwrap());
            }
        }
    }
    let mut out = BTreeMap::new();
    walk(dir, dir, &mut out);
    out
}

fn run_wikilink(args: &[&str]) {
    let output = Command::new(env!("CARGO_BIN_EXE_wikilink"))
        .args(args)
        .output()
        .expect("binary should run");
    assert!(
        output.status.success(),
        "wikilink {args:?} failed: {}",
        String::from_utf8_lossy(&output.stderr)
    );
}

#[test]
fn acceptance_determinism_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus");
    run_wikilink(&[
        "fixture",
        "--seed",
        "7",
        "--small-size",
        "400",
        "--large-size",
        "2000",
        "--overlap",
        "0.8",
        "--mean-degree",
        "10",
        "--out-dir",
        corpus.to_str().unwrap(),
    ]);

    let out_a = dir.path().join("run_a");
    let out_b = dir.path().join("run_b");
    for out in [&out_a, &out_b] {
        run_wikilink(&[
            "pipeline",
            "--small",
            corpus.join("small.jsonl").to_str().unwrap(),
            "--large",
            corpus.join("large.jsonl").to_str().unwrap(),
            "--mapping",
            corpus.join("mapping.tsv").to_str().unwrap(),
            "--out-dir",
            out.to_str().unwrap(),
        ]);
    }
    let tree_a = tree_bytes(&out_a);
    let tree_b = tree_bytes(&out_b);
    assert_eq!(
        tree_a.keys().collect::<Vec<_>>(),
        tree_b.keys().collect::<Vec<_>>(),
        "artifact sets differ"
    );
    for (name, bytes) in &tree_a {
        assert_eq!(bytes, &tree_b[name], "artifact {name} differs between runs");
    }
    assert_eq!(tree_a.len(), 6, "expected 6 artifacts, got {:?}", tree_a.keys());

    // Seeded end-to-end mode is reproducible too.
    let seed_a = dir.path().join("seed_a");
    let seed_b = dir.path().join("seed_b");
    for out in [&seed_a, &seed_b] {
        run_wikilink(&[
            "pipeline",
            "--seed",
            "7",
            "--small-size",
            "300",
            "--large-size",
            "1200",
            "--overlap",
            "0.7",
            "--mean-degree",
            "8",
            "--out-dir",
            out.to_str().unwrap(),
        ]);
    }
    assert_eq!(tree_bytes(&seed_a), tree_bytes(&seed_b));

    println!("acceptance determinism_pipeline: PASS");
}
