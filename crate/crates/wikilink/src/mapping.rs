//! The bidirectional title mapping between a small and a large wiki.

use std::collections::BTreeMap;

use crate::title::PageTitle;

/// A strict bijection between small-wiki titles and large-wiki titles.
///
/// `forward` sends a small title to its large counterpart, `backward` is the
/// exact inverse. Interlanguage data in the wild is not a bijection (several
/// large pages can claim the same small title and vice versa), so
/// construction resolves conflicts deterministically: candidate pairs are
/// considered in lexicographic `(small, large)` order and a pair is accepted
/// only if neither of its titles is taken yet. The outcome is independent of
/// input order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TitleMapping {
    forward: BTreeMap<PageTitle, PageTitle>,
    backward: BTreeMap<PageTitle, PageTitle>,
}

impl TitleMapping {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a mapping from candidate pairs, deduplicating and resolving
    /// conflicts by the lexicographic rule above. Returns the mapping and the
    /// number of distinct pairs discarded to conflicts.
    pub fn from_pairs<I>(pairs: I) -> (Self, usize)
    where
        I: IntoIterator<Item = (PageTitle, PageTitle)>,
    {
        let unique: std::collections::BTreeSet<(PageTitle, PageTitle)> =
            pairs.into_iter().collect();
        let mut mapping = Self::new();
        let mut discarded = 0;
        for (small, large) in unique {
            if mapping.forward.contains_key(&small) || mapping.backward.contains_key(&large) {
                discarded += 1;
            } else {
                mapping.forward.insert(small.clone(), large.clone());
                mapping.backward.insert(large, small);
            }
        }
        (mapping, discarded)
    }

    /// Number of mapped pairs.
    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    /// The large-wiki counterpart of a small-wiki title.
    pub fn small_to_large(&self, small: &PageTitle) -> Option<&PageTitle> {
        self.forward.get(small)
    }

    /// The small-wiki counterpart of a large-wiki title.
    pub fn large_to_small(&self, large: &PageTitle) -> Option<&PageTitle> {
        self.backward.get(large)
    }

    /// Pairs in ascending small-title order.
    pub fn pairs(&self) -> impl Iterator<Item = (&PageTitle, &PageTitle)> {
        self.forward.iter()
    }
}
