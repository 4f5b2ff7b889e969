//! Page titles and their canonical form.
//!
//! Titles are the node identity everywhere in this crate. MediaWiki stores
//! them with underscores in database dumps and with spaces in rendered pages;
//! we fold both spellings into one canonical form so that joins between data
//! sources are exact string matches.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TitleError {
    /// The title was empty, or contained only underscores and whitespace.
    #[error("empty page title after canonicalization")]
    EmptyTitle,
}

/// A canonicalized page title.
///
/// Canonical form: underscores become spaces, runs of whitespace collapse to
/// a single space, leading/trailing whitespace is stripped. Case is never
/// folded; MediaWiki capitalization rules are language-specific and guessing
/// them would corrupt the join.
///
/// Backed by `Arc<str>` so the same title can sit in several indexes (node
/// table, adjacency, mapping) without copying the text.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PageTitle(Arc<str>);

impl PageTitle {
    /// Canonicalizes `raw` and returns the title, or `EmptyTitle` if nothing
    /// is left after canonicalization.
    ///
    /// Canonicalization is idempotent: feeding the canonical form back in
    /// yields the same title.
    pub fn new(raw: &str) -> Result<Self, TitleError> {
        let replaced = raw.replace('_', " ");
        let mut canonical = String::with_capacity(replaced.len());
        for word in replaced.split_whitespace() {
            if !canonical.is_empty() {
                canonical.push(' ');
            }
            canonical.push_str(word);
        }
        if canonical.is_empty() {
            return Err(TitleError::EmptyTitle);
        }
        Ok(PageTitle(canonical.into()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for PageTitle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for PageTitle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PageTitle({:?})", &*self.0)
    }
}

impl AsRef<str> for PageTitle {
    fn as_ref(&self) -> &str {
        &self.0
    }
}
