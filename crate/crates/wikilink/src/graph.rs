//! Directed page graphs.
//!
//! Nodes are canonical page titles, edges are hyperlinks. Titles are interned
//! to dense `u32` ids; adjacency is a sorted id set per node, which keeps
//! edges set-valued (no duplicates) and makes the neighbourhood lookups the
//! enrichment pass depends on cheap.
//!
//! Invariants maintained by construction:
//! - every edge endpoint is a node,
//! - no self-loops,
//! - no duplicate edges.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::title::PageTitle;

pub(crate) type NodeId = u32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    /// `normalize` was given a universe that does not contain one of the
    /// graph's nodes.
    #[error("node {0} is outside the normalization universe")]
    NodeOutsideUniverse(PageTitle),
}

/// Audit counts for a structural operation.
///
/// `skipped_duplicate_edges` counts raw edge insertions dropped because the
/// edge already existed (see [`PageGraph::add_edges_counted`]). Set-valued
/// inputs cannot carry duplicates, so `combine` and `normalize` always report
/// it as zero.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct GraphDelta {
    pub added_edges: usize,
    pub added_nodes: usize,
    pub skipped_duplicate_edges: usize,
}

/// A directed graph over page titles.
#[derive(Clone, Default)]
pub struct PageGraph {
    ids: HashMap<PageTitle, NodeId>,
    titles: Vec<PageTitle>,
    out: Vec<BTreeSet<NodeId>>,
    edge_count: usize,
}

impl PageGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn node_count(&self) -> usize {
        self.titles.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn contains_node(&self, title: &PageTitle) -> bool {
        self.ids.contains_key(title)
    }

    pub fn contains_edge(&self, source: &PageTitle, target: &PageTitle) -> bool {
        match (self.ids.get(source), self.ids.get(target)) {
            (Some(&s), Some(&t)) => self.out[s as usize].contains(&t),
            _ => false,
        }
    }

    /// Nodes in insertion order.
    pub fn nodes(&self) -> impl Iterator<Item = &PageTitle> {
        self.titles.iter()
    }

    /// Out-neighbours of `source`; empty for unknown nodes.
    pub fn out_neighbors<'a>(&'a self, source: &PageTitle) -> impl Iterator<Item = &'a PageTitle> {
        let ids: Option<&BTreeSet<NodeId>> =
            self.ids.get(source).map(|&id| &self.out[id as usize]);
        ids.into_iter()
            .flatten()
            .map(move |&t| &self.titles[t as usize])
    }

    pub fn out_degree(&self, source: &PageTitle) -> usize {
        self.ids
            .get(source)
            .map_or(0, |&id| self.out[id as usize].len())
    }

    /// All edges as title pairs, in (source insertion, target id) order.
    pub fn edges(&self) -> impl Iterator<Item = (&PageTitle, &PageTitle)> {
        self.out.iter().enumerate().flat_map(move |(s, targets)| {
            let source = &self.titles[s];
            targets.iter().map(move |&t| (source, &self.titles[t as usize]))
        })
    }

    /// Inserts `title` as a node (without edges) if not already present.
    pub fn add_node(&mut self, title: PageTitle) {
        self.intern(title);
    }

    /// Inserts the edge `source -> target`, creating missing endpoints.
    ///
    /// Self-loops are silently dropped (the endpoint is still added as a
    /// node) and re-inserting an existing edge is a no-op.
    pub fn add_edge(&mut self, source: PageTitle, target: PageTitle) {
        self.add_edge_counted(source, target);
    }

    /// Bulk [`add_edge`](Self::add_edge) with an audit trail of how many
    /// edges and nodes were new and how many duplicate insertions were
    /// dropped.
    pub fn add_edges_counted<I>(&mut self, edges: I) -> GraphDelta
    where
        I: IntoIterator<Item = (PageTitle, PageTitle)>,
    {
        let mut delta = GraphDelta::default();
        for (source, target) in edges {
            let nodes_before = self.titles.len();
            match self.add_edge_counted(source, target) {
                EdgeOutcome::Inserted => delta.added_edges += 1,
                EdgeOutcome::Duplicate => delta.skipped_duplicate_edges += 1,
                EdgeOutcome::SelfLoop => {}
            }
            delta.added_nodes += self.titles.len() - nodes_before;
        }
        delta
    }

    fn add_edge_counted(&mut self, source: PageTitle, target: PageTitle) -> EdgeOutcome {
        if source == target {
            self.intern(source);
            return EdgeOutcome::SelfLoop;
        }
        let s = self.intern(source);
        let t = self.intern(target);
        if self.out[s as usize].insert(t) {
            self.edge_count += 1;
            EdgeOutcome::Inserted
        } else {
            EdgeOutcome::Duplicate
        }
    }

    /// Edge-set union: the result contains every node and edge of `self`
    /// (the vanilla graph) plus those of `other` (the enriched graph).
    ///
    /// The delta reports how much `other` actually contributed: edges and
    /// nodes of `other` that were not already present.
    pub fn combine(&self, other: &PageGraph) -> (PageGraph, GraphDelta) {
        let mut result = self.clone();
        let mut delta = GraphDelta::default();
        for title in other.nodes() {
            if !result.contains_node(title) {
                delta.added_nodes += 1;
                result.add_node(title.clone());
            }
        }
        for (source, target) in other.edges() {
            if let EdgeOutcome::Inserted = result.add_edge_counted(source.clone(), target.clone())
            {
                delta.added_edges += 1;
            }
        }
        (result, delta)
    }

    /// Pads the graph with isolated nodes so its node set equals `universe`.
    ///
    /// Edges are untouched. Fails if the graph has a node outside the
    /// universe; padding may only ever grow a graph.
    pub fn normalize<I>(&self, universe: I) -> Result<(PageGraph, GraphDelta), GraphError>
    where
        I: IntoIterator<Item = PageTitle>,
    {
        let universe: BTreeSet<PageTitle> = universe.into_iter().collect();
        for title in self.nodes() {
            if !universe.contains(title) {
                return Err(GraphError::NodeOutsideUniverse(title.clone()));
            }
        }
        let mut result = self.clone();
        let mut delta = GraphDelta::default();
        for title in universe {
            if !result.contains_node(&title) {
                delta.added_nodes += 1;
                result.add_node(title);
            }
        }
        Ok((result, delta))
    }

    /// Number of nodes with no outgoing links.
    pub fn deadend_count(&self) -> usize {
        self.out.iter().filter(|targets| targets.is_empty()).count()
    }

    pub(crate) fn intern(&mut self, title: PageTitle) -> NodeId {
        if let Some(&id) = self.ids.get(&title) {
            return id;
        }
        let id = NodeId::try_from(self.titles.len()).expect("graph node count exceeds u32");
        self.ids.insert(title.clone(), id);
        self.titles.push(title);
        self.out.push(BTreeSet::new());
        id
    }

    /// Id-level edge insertion for hot loops where both endpoints are known
    /// to be interned. Returns whether a new edge was stored (self-loops and
    /// duplicates are dropped as in [`add_edge`](Self::add_edge)).
    pub(crate) fn add_edge_ids(&mut self, source: NodeId, target: NodeId) -> bool {
        if source == target {
            return false;
        }
        if self.out[source as usize].insert(target) {
            self.edge_count += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn id_of(&self, title: &PageTitle) -> Option<NodeId> {
        self.ids.get(title).copied()
    }

    pub(crate) fn title_of(&self, id: NodeId) -> &PageTitle {
        &self.titles[id as usize]
    }

    pub(crate) fn out_ids(&self, id: NodeId) -> &BTreeSet<NodeId> {
        &self.out[id as usize]
    }
}

enum EdgeOutcome {
    Inserted,
    Duplicate,
    SelfLoop,
}

/// Graphs compare as (node set, edge set) pairs; insertion order and interned
/// ids are representation details.
impl PartialEq for PageGraph {
    fn eq(&self, other: &Self) -> bool {
        if self.node_count() != other.node_count() || self.edge_count != other.edge_count {
            return false;
        }
        self.nodes().all(|n| other.contains_node(n))
            && self.edges().all(|(s, t)| other.contains_edge(s, t))
    }
}

impl Eq for PageGraph {}

impl std::fmt::Debug for PageGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut nodes: Vec<&str> = self.nodes().map(PageTitle::as_str).collect();
        nodes.sort_unstable();
        let mut edges: Vec<(&str, &str)> = self
            .edges()
            .map(|(s, t)| (s.as_str(), t.as_str()))
            .collect();
        edges.sort_unstable();
        f.debug_struct("PageGraph")
            .field("nodes", &nodes)
            .field("edges", &edges)
            .finish()
    }
}
