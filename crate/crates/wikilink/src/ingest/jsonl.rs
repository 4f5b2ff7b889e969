//! The line-delimited JSON graph format.
//!
//! One object per line: `{"title": string, "links": [string, ...]}`. The
//! writer emits lines sorted by title with sorted link arrays, LF endings and
//! no trailing blank line, so equal graphs always serialize to equal bytes.

use std::collections::BTreeSet;
use std::io::{BufRead, BufReader, Read, Write};

use serde::{Deserialize, Serialize};

use super::IngestError;
use crate::graph::PageGraph;
use crate::title::PageTitle;

#[derive(Serialize, Deserialize)]
struct PageLine {
    title: String,
    links: Vec<String>,
}

/// Reads a graph from JSONL. Titles are canonicalized; link targets become
/// nodes; duplicate links and self-links are dropped per graph semantics.
///
/// Two lines that canonicalize to the same title are an error; the format
/// has exactly one line per page.
pub fn load_graph_jsonl<R: Read>(reader: R) -> Result<PageGraph, IngestError> {
    let mut graph = PageGraph::new();
    let mut seen: BTreeSet<PageTitle> = BTreeSet::new();
    for (idx, line) in BufReader::new(reader).lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let parsed: PageLine =
            serde_json::from_str(&line).map_err(|e| IngestError::MalformedLine {
                line: line_no,
                reason: e.to_string(),
            })?;
        let title = canon(&parsed.title, line_no)?;
        if !seen.insert(title.clone()) {
            return Err(IngestError::DuplicatePage(title));
        }
        graph.add_node(title.clone());
        for link in &parsed.links {
            let target = canon(link, line_no)?;
            graph.add_edge(title.clone(), target);
        }
    }
    Ok(graph)
}

/// Writes a graph as canonical JSONL; an empty graph writes zero bytes.
pub fn write_graph_jsonl<W: Write>(graph: &PageGraph, mut writer: W) -> std::io::Result<()> {
    let mut titles: Vec<&PageTitle> = graph.nodes().collect();
    titles.sort_unstable();
    for title in titles {
        let mut links: Vec<&str> = graph.out_neighbors(title).map(PageTitle::as_str).collect();
        links.sort_unstable();
        let line = PageLine {
            title: title.as_str().to_owned(),
            links: links.into_iter().map(str::to_owned).collect(),
        };
        serde_json::to_writer(&mut writer, &line)?;
        writer.write_all(b"\n")?;
    }
    Ok(())
}

fn canon(raw: &str, line_no: usize) -> Result<PageTitle, IngestError> {
    PageTitle::new(raw).map_err(|e| IngestError::MalformedLine {
        line: line_no,
        reason: e.to_string(),
    })
}
