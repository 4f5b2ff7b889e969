//! The TSV mapping interchange format: `small_title TAB large_title`, one
//! pair per line, `#`-prefixed comment lines allowed.

use std::io::{BufRead, BufReader, Read, Write};

use super::IngestError;
use crate::mapping::TitleMapping;
use crate::title::PageTitle;

/// A mapping read from TSV plus the number of pairs lost to conflicts.
#[derive(Debug)]
pub struct LoadedMapping {
    pub mapping: TitleMapping,
    pub discarded: usize,
}

/// Reads a mapping. Titles are canonicalized; duplicate keys are resolved by
/// the lexicographic tie-break of [`TitleMapping::from_pairs`].
pub fn load_mapping_tsv<R: Read>(reader: R) -> Result<LoadedMapping, IngestError> {
    let mut pairs = Vec::new();
    for (idx, line) in BufReader::new(reader).lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split('\t');
        let (small, large) = match (fields.next(), fields.next(), fields.next()) {
            (Some(small), Some(large), None) => (small, large),
            _ => {
                return Err(IngestError::MalformedLine {
                    line: line_no,
                    reason: "expected exactly one TAB separating two titles".to_owned(),
                })
            }
        };
        pairs.push((canon(small, line_no)?, canon(large, line_no)?));
    }
    let (mapping, discarded) = TitleMapping::from_pairs(pairs);
    Ok(LoadedMapping { mapping, discarded })
}

/// Writes a mapping as canonical TSV, sorted by small title.
pub fn write_mapping_tsv<W: Write>(mapping: &TitleMapping, mut writer: W) -> std::io::Result<()> {
    for (small, large) in mapping.pairs() {
        writeln!(writer, "{small}\t{large}")?;
    }
    Ok(())
}

fn canon(raw: &str, line_no: usize) -> Result<PageTitle, IngestError> {
    PageTitle::new(raw).map_err(|e| IngestError::MalformedLine {
        line: line_no,
        reason: e.to_string(),
    })
}
