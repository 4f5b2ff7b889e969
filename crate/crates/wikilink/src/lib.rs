//! Link-graph enrichment for small wikis.
//!
//! A small wiki's article graph is typically sparse: short articles carry few
//! outgoing links, so large parts of the wiki are unreachable by navigation
//! alone. This crate grows that graph by borrowing structure from a large
//! wiki in another language. Interlanguage records pair each small-wiki title
//! with its large-wiki counterpart; for every paired page we walk the
//! large-wiki neighbourhood and project each neighbour back through the
//! mapping, producing candidate links between articles that already exist on
//! the small wiki but were never linked.
//!
//! The pieces:
//!
//! - [`graph`]: directed page graphs with set-valued edges, plus the
//!   structural operations `combine` (edge-set union) and `normalize`
//!   (isolated-node padding onto a shared node universe).
//! - [`mapping`]: the bidirectional title mapping between the two wikis.
//! - [`ingest`]: parsers for the JSONL graph format, the TSV mapping
//!   format, and MediaWiki SQL dumps (`page` + `langlinks`), including the
//!   join that derives a mapping from the two dumps.
//! - [`enrich`](mod@enrich): the projection itself, single-source and
//!   multi-source.
//! - [`analysis`]: evaluation with strongly connected components, average
//!   degree, dead-end counts, and before/after comparison reports.
//! - [`fixture`]: seeded synthetic corpora for tests and benchmarks.

pub mod analysis;
pub mod enrich;
pub mod fixture;
pub mod graph;
pub mod ingest;
pub mod mapping;
mod title;

pub use analysis::{
    compare, metrics, tarjan_scc, AnalysisError, ComparisonReport, GraphMetrics, SccResult,
};
pub use enrich::{enrich, enrich_multi, EnrichmentStats};
pub use fixture::{generate_fixture, FixtureError};
pub use graph::{GraphDelta, GraphError, PageGraph};
pub use ingest::IngestError;
pub use mapping::TitleMapping;
pub use title::{PageTitle, TitleError};
