//! Seeded synthetic corpora.
//!
//! Generates a (small graph, large graph, mapping) triple shaped like the
//! real inputs: a sparse small wiki with plenty of dead ends, a denser large
//! wiki with a chosen mean out-degree, and a title mapping covering a chosen
//! fraction of the small wiki. Everything is driven by one seed so fixtures
//! are reproducible byte-for-byte once serialized.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::PageGraph;
use crate::mapping::TitleMapping;
use crate::title::PageTitle;

/// Mean out-degree of the generated small graph. Kept low on purpose: the
/// interesting inputs are poorly connected wikis where a fair share of pages
/// has no outgoing links at all.
const SMALL_MEAN_DEGREE: f64 = 1.5;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FixtureError {
    #[error("invalid fixture parameters: {0}")]
    InvalidParams(String),
}

/// Generates a deterministic synthetic corpus.
///
/// `overlap_fraction` of the small nodes (rounded to the nearest integer)
/// are mapped to distinct large nodes. `mean_degree` is the expected mean
/// out-degree of the large graph; edges are sampled uniformly, so the
/// realized mean can fall marginally short when duplicates are drawn.
pub fn generate_fixture(
    seed: u64,
    small_size: usize,
    large_size: usize,
    overlap_fraction: f64,
    mean_degree: f64,
) -> Result<(PageGraph, PageGraph, TitleMapping), FixtureError> {
    if small_size > large_size {
        return Err(FixtureError::InvalidParams(format!(
            "small_size {small_size} exceeds large_size {large_size}"
        )));
    }
    if !(0.0..=1.0).contains(&overlap_fraction) {
        return Err(FixtureError::InvalidParams(format!(
            "overlap_fraction {overlap_fraction} not in [0, 1]"
        )));
    }
    if !(mean_degree.is_finite() && mean_degree > 0.0) {
        return Err(FixtureError::InvalidParams(format!(
            "mean_degree {mean_degree} must be positive"
        )));
    }
    let mapped = (overlap_fraction * small_size as f64).round() as usize;
    if mapped < 1 {
        return Err(FixtureError::InvalidParams(format!(
            "overlap_fraction {overlap_fraction} of {small_size} small pages maps no page"
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let small_titles = titles("s", small_size);
    let large_titles = titles("l", large_size);

    let small = random_graph(&small_titles, SMALL_MEAN_DEGREE, &mut rng);
    let large = random_graph(&large_titles, mean_degree, &mut rng);

    let small_picks = rand::seq::index::sample(&mut rng, small_size, mapped);
    let large_picks = rand::seq::index::sample(&mut rng, large_size, mapped);
    let (mapping, discarded) = TitleMapping::from_pairs(
        small_picks
            .iter()
            .zip(large_picks.iter())
            .map(|(s, l)| (small_titles[s].clone(), large_titles[l].clone())),
    );
    debug_assert_eq!(discarded, 0, "sampled pairs are disjoint by construction");

    Ok((small, large, mapping))
}

fn titles(prefix: &str, count: usize) -> Vec<PageTitle> {
    (0..count)
        .map(|i| PageTitle::new(&format!("{prefix}{i:07}")).expect("generated titles are non-empty"))
        .collect()
}

/// Uniform directed graph on `titles` with ~`mean_degree * n` edges.
fn random_graph(titles: &[PageTitle], mean_degree: f64, rng: &mut ChaCha8Rng) -> PageGraph {
    let n = titles.len();
    let mut graph = PageGraph::new();
    let ids: Vec<_> = titles.iter().map(|t| graph.intern(t.clone())).collect();
    if n < 2 {
        return graph;
    }
    let max_edges = n * (n - 1);
    let target = ((mean_degree * n as f64).round() as usize).min(max_edges);
    // Rejection sampling; cap attempts so dense requests still terminate.
    let mut attempts = 0usize;
    let attempt_cap = target.saturating_mul(20) + 1000;
    while graph.edge_count() < target && attempts < attempt_cap {
        attempts += 1;
        let s = rng.random_range(0..n);
        let t = rng.random_range(0..n);
        if s != t {
            graph.add_edge_ids(ids[s], ids[t]);
        }
    }
    graph
}
