//! Parsers for external data: the JSONL graph format, the TSV mapping
//! format, and MediaWiki SQL dumps.

mod join;
mod jsonl;
mod sqldump;
mod tsv;

pub use join::{build_mapping, MappingBuildStats};
pub use jsonl::{load_graph_jsonl, write_graph_jsonl};
pub use sqldump::{parse_sql_dump, DumpRecord, DumpTable, LangLinkRow, PageRow};
pub use tsv::{load_mapping_tsv, write_mapping_tsv, LoadedMapping};

use thiserror::Error;

use crate::title::PageTitle;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error(transparent)]
    Io(#[from] std::io::Error),

    /// A line of a line-oriented format could not be parsed.
    #[error("line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },

    /// Two JSONL lines declared the same canonical title.
    #[error("duplicate page {0}")]
    DuplicatePage(PageTitle),

    /// A malformed SQL token; the offset is a byte position in the stream.
    #[error("SQL syntax error at byte {offset}: {reason}")]
    SyntaxError { offset: usize, reason: String },

    /// The stream mentioned no `CREATE TABLE` or `INSERT INTO` for the
    /// requested table, which almost always means the wrong dump file.
    #[error("no trace of table `{0}` in the dump")]
    UnknownTable(&'static str),
}
