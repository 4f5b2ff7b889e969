//! Link projection from a large wiki into a small one.
//!
//! For every small-wiki page with a large-wiki counterpart, walk the
//! counterpart's out-neighbours in the large graph and map each neighbour
//! back. A neighbour that maps to an existing small-wiki page yields a new
//! candidate link. The enriched graph stands alone on the small wiki's node
//! set and does not include the small wiki's original edges, so its metrics
//! can be reported separately before the combination step.

use serde::Serialize;

use crate::graph::PageGraph;
use crate::mapping::TitleMapping;

/// Counters describing one enrichment pass.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct EnrichmentStats {
    /// Small-wiki pages considered.
    pub pages_total: usize,
    /// Pages whose mapped counterpart exists in the large graph.
    pub pages_mapped: usize,
    /// Distinct projected edges in the enriched graph.
    pub edges_created: usize,
    /// Large-graph neighbours visited.
    pub neighbors_scanned: usize,
    /// Visited neighbours with no usable small-wiki counterpart (unmapped,
    /// or mapped to a title absent from the small graph).
    pub neighbors_unmapped: usize,
}

/// Projects the large graph's links onto the small graph's node set.
///
/// The result has exactly the small graph's nodes. An edge `(v, w)` exists
/// iff the large graph links `mapping(v)` to some neighbour whose backward
/// image is `w`, `w` is a small-graph node, and `w != v`. Mapping entries
/// pointing at titles missing from the large graph count the page as
/// unmapped; projected targets missing from the small graph are dropped and
/// counted per neighbour.
pub fn enrich(
    small: &PageGraph,
    large: &PageGraph,
    mapping: &TitleMapping,
) -> (PageGraph, EnrichmentStats) {
    let mut result = PageGraph::new();
    for node in small.nodes() {
        result.add_node(node.clone());
    }

    let mut stats = EnrichmentStats {
        pages_total: small.node_count(),
        ..EnrichmentStats::default()
    };

    // `result` interned the small nodes in iteration order, so small-graph
    // ids are valid in it.
    for (page_id, page) in small.nodes().enumerate() {
        let large_id = mapping
            .small_to_large(page)
            .and_then(|counterpart| large.id_of(counterpart));
        let Some(large_id) = large_id else {
            continue;
        };
        stats.pages_mapped += 1;
        for &neighbor_id in large.out_ids(large_id) {
            stats.neighbors_scanned += 1;
            let target_id = mapping
                .large_to_small(large.title_of(neighbor_id))
                .and_then(|target| small.id_of(target));
            match target_id {
                Some(target_id) => {
                    if result.add_edge_ids(page_id as u32, target_id) {
                        stats.edges_created += 1;
                    }
                }
                None => stats.neighbors_unmapped += 1,
            }
        }
    }

    (result, stats)
}

/// Multi-source enrichment: enrich against each `(large, mapping)` source
/// independently and union the results onto the small node set.
///
/// Union is commutative, so the output is independent of source order; the
/// per-source stats are reported in input order.
pub fn enrich_multi(
    small: &PageGraph,
    sources: &[(PageGraph, TitleMapping)],
) -> (PageGraph, Vec<EnrichmentStats>) {
    let mut result = PageGraph::new();
    for node in small.nodes() {
        result.add_node(node.clone());
    }
    let mut all_stats = Vec::with_capacity(sources.len());
    for (large, mapping) in sources {
        let (projected, stats) = enrich(small, large, mapping);
        all_stats.push(stats);
        result = result.combine(&projected).0;
    }
    (result, all_stats)
}
