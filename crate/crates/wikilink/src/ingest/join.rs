//! The page/langlinks join that derives a title mapping from two dumps.

use std::collections::HashMap;

use super::sqldump::{LangLinkRow, PageRow};
use crate::mapping::TitleMapping;
use crate::title::PageTitle;

/// Counts reported alongside a dump-derived mapping.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MappingBuildStats {
    /// Pairs in the final bijection.
    pub pairs_kept: usize,
    /// Distinct candidate pairs lost to key conflicts.
    pub conflicts_discarded: usize,
    /// Langlink rows in the requested language that matched no page row (or
    /// carried a title that canonicalizes to nothing).
    pub dangling_langlinks: usize,
}

/// Joins `langlinks` rows against the large wiki's `page` rows.
///
/// Every langlink in `small_lang` whose source page id resolves to an
/// article produces the candidate pair `(canon(ll_title), canon(page_title))`;
/// candidates then go through the usual bijection conflict resolution.
/// Unmatched rows are counted, never fatal; real interlanguage tables
/// dangle.
pub fn build_mapping<'a, P, L>(
    large_pages: P,
    langlinks: L,
    small_lang: &str,
) -> (TitleMapping, MappingBuildStats)
where
    P: IntoIterator<Item = &'a PageRow>,
    L: IntoIterator<Item = &'a LangLinkRow>,
{
    let title_by_id: HashMap<u64, &str> = large_pages
        .into_iter()
        .filter(|row| row.namespace == 0)
        .map(|row| (row.page_id, row.title.as_str()))
        .collect();

    let mut stats = MappingBuildStats::default();
    let mut candidates = Vec::new();
    for link in langlinks {
        if link.lang_code != small_lang {
            continue;
        }
        let pair = title_by_id.get(&link.from_page_id).and_then(|large_raw| {
            let small = PageTitle::new(&link.target_title).ok()?;
            let large = PageTitle::new(large_raw).ok()?;
            Some((small, large))
        });
        match pair {
            Some(pair) => candidates.push(pair),
            None => stats.dangling_langlinks += 1,
        }
    }

    let (mapping, discarded) = TitleMapping::from_pairs(candidates);
    stats.pairs_kept = mapping.len();
    stats.conflicts_discarded = discarded;
    (mapping, stats)
}
