//! MediaWiki SQL dump parsing.
//!
//! Dumps are mysqldump output: DDL, comments and `INSERT INTO \`table\`
//! VALUES (...),(...),...;` statements, where a big table spans many INSERT
//! statements. The scanner splits the stream into statements (quote- and
//! comment-aware, one statement buffered at a time) and the tuple parser
//! decodes the rows of the one table we were asked for. Everything else is
//! ignored.
//!
//! The value grammar is deliberately the mysqldump subset: integers, floats,
//! `NULL`, and singly-quoted strings with backslash escapes and `''`
//! doubling.

use std::io::{BufReader, Read};

use super::IngestError;

/// Which dump table to extract.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DumpTable {
    Page,
    Langlinks,
}

impl DumpTable {
    fn name(self) -> &'static str {
        match self {
            DumpTable::Page => "page",
            DumpTable::Langlinks => "langlinks",
        }
    }
}

/// A namespace-0 row of the `page` table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PageRow {
    pub page_id: u64,
    pub namespace: i64,
    /// Raw title as stored in the dump (underscored, un-canonicalized).
    pub title: String,
}

/// A row of the `langlinks` table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LangLinkRow {
    pub from_page_id: u64,
    /// Lowercase language code, e.g. `sco` or `zh-min-nan`.
    pub lang_code: String,
    /// Raw target title as stored in the dump.
    pub target_title: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DumpRecord {
    Page(PageRow),
    LangLink(LangLinkRow),
}

impl DumpRecord {
    pub fn into_page(self) -> Option<PageRow> {
        match self {
            DumpRecord::Page(row) => Some(row),
            DumpRecord::LangLink(_) => None,
        }
    }

    pub fn into_lang_link(self) -> Option<LangLinkRow> {
        match self {
            DumpRecord::LangLink(row) => Some(row),
            DumpRecord::Page(_) => None,
        }
    }
}

/// Extracts all rows of `table` from a dump stream, in dump order.
///
/// `page` rows are filtered to namespace 0; `langlinks` rows with a language
/// code that is not lowercase ASCII letters and `-` are dropped as noise.
/// Fails with `UnknownTable` when the stream never mentions the table in a
/// `CREATE TABLE` or `INSERT INTO`. A dump of an empty table still carries
/// its DDL, so this signals the wrong file rather than an empty table.
pub fn parse_sql_dump<R: Read>(reader: R, table: DumpTable) -> Result<Vec<DumpRecord>, IngestError> {
    let mut records = Vec::new();
    let mut table_seen = false;
    let mut scanner = StatementScanner::new(reader);
    while let Some((base, statement)) = scanner.next_statement()? {
        process_statement(&statement, base, table, &mut table_seen, &mut records)?;
    }
    if !table_seen {
        return Err(IngestError::UnknownTable(table.name()));
    }
    Ok(records)
}

// ---------------------------------------------------------------------------
// Statement scanning

enum ScanState {
    Code,
    CodeDash,
    CodeSlash,
    SingleQuote,
    SingleQuoteEscape,
    DoubleQuote,
    DoubleQuoteEscape,
    Backtick,
    LineComment,
    BlockComment,
    BlockCommentStar,
}

/// Splits a byte stream into SQL statements at top-level `;`, tracking quote
/// and comment context so separators inside literals don't split. Buffers one
/// statement at a time.
struct StatementScanner<R: Read> {
    reader: BufReader<R>,
    offset: usize,
    state: ScanState,
    buffer: Vec<u8>,
    start: usize,
    chunk: Vec<u8>,
    chunk_pos: usize,
    done: bool,
}

impl<R: Read> StatementScanner<R> {
    fn new(reader: R) -> Self {
        StatementScanner {
            reader: BufReader::new(reader),
            offset: 0,
            state: ScanState::Code,
            buffer: Vec::new(),
            start: 0,
            chunk: Vec::new(),
            chunk_pos: 0,
            done: false,
        }
    }

    fn next_byte(&mut self) -> Result<Option<u8>, IngestError> {
        if self.chunk_pos >= self.chunk.len() {
            if self.done {
                return Ok(None);
            }
            self.chunk.resize(64 * 1024, 0);
            let n = self.reader.read(&mut self.chunk)?;
            self.chunk.truncate(n);
            self.chunk_pos = 0;
            if n == 0 {
                self.done = true;
                return Ok(None);
            }
        }
        let b = self.chunk[self.chunk_pos];
        self.chunk_pos += 1;
        Ok(Some(b))
    }

    fn next_statement(&mut self) -> Result<Option<(usize, String)>, IngestError> {
        loop {
            let Some(byte) = self.next_byte()? else {
                // Final statement without a trailing semicolon.
                if self.buffer.is_empty() {
                    return Ok(None);
                }
                return Ok(Some(self.take_statement()));
            };
            let at = self.offset;
            self.offset += 1;

            let top_level = matches!(
                self.state,
                ScanState::Code | ScanState::CodeDash | ScanState::CodeSlash
            );
            if top_level && self.buffer.is_empty() {
                if byte.is_ascii_whitespace() {
                    continue;
                }
                self.start = at;
            }

            if top_level && byte == b';' {
                if self.buffer.is_empty() {
                    continue;
                }
                return Ok(Some(self.take_statement()));
            }

            self.buffer.push(byte);
            self.state = match self.state {
                ScanState::Code => match byte {
                    b'\'' => ScanState::SingleQuote,
                    b'"' => ScanState::DoubleQuote,
                    b'`' => ScanState::Backtick,
                    b'-' => ScanState::CodeDash,
                    b'/' => ScanState::CodeSlash,
                    b'#' => ScanState::LineComment,
                    _ => ScanState::Code,
                },
                ScanState::CodeDash => match byte {
                    b'-' => ScanState::LineComment,
                    b'\'' => ScanState::SingleQuote,
                    b'"' => ScanState::DoubleQuote,
                    b'`' => ScanState::Backtick,
                    b'/' => ScanState::CodeSlash,
                    _ => ScanState::Code,
                },
                ScanState::CodeSlash => match byte {
                    b'*' => ScanState::BlockComment,
                    b'\'' => ScanState::SingleQuote,
                    b'"' => ScanState::DoubleQuote,
                    b'`' => ScanState::Backtick,
                    b'-' => ScanState::CodeDash,
                    _ => ScanState::Code,
                },
                ScanState::SingleQuote => match byte {
                    b'\\' => ScanState::SingleQuoteEscape,
                    b'\'' => ScanState::Code,
                    _ => ScanState::SingleQuote,
                },
                ScanState::SingleQuoteEscape => ScanState::SingleQuote,
                ScanState::DoubleQuote => match byte {
                    b'\\' => ScanState::DoubleQuoteEscape,
                    b'"' => ScanState::Code,
                    _ => ScanState::DoubleQuote,
                },
                ScanState::DoubleQuoteEscape => ScanState::DoubleQuote,
                ScanState::Backtick => match byte {
                    b'`' => ScanState::Code,
                    _ => ScanState::Backtick,
                },
                ScanState::LineComment => match byte {
                    b'\n' => ScanState::Code,
                    _ => ScanState::LineComment,
                },
                ScanState::BlockComment => match byte {
                    b'*' => ScanState::BlockCommentStar,
                    _ => ScanState::BlockComment,
                },
                ScanState::BlockCommentStar => match byte {
                    b'/' => ScanState::Code,
                    b'*' => ScanState::BlockCommentStar,
                    _ => ScanState::BlockComment,
                },
            };
        }
    }

    fn take_statement(&mut self) -> (usize, String) {
        let bytes = std::mem::take(&mut self.buffer);
        self.state = ScanState::Code;
        // Dumps are UTF-8; anything else is replaced rather than fatal so a
        // stray byte in an ignored statement cannot kill the run.
        (self.start, String::from_utf8_lossy(&bytes).into_owned())
    }
}

// ---------------------------------------------------------------------------
// Statement parsing

fn process_statement(
    statement: &str,
    base: usize,
    table: DumpTable,
    table_seen: &mut bool,
    records: &mut Vec<DumpRecord>,
) -> Result<(), IngestError> {
    let mut cur = Cursor::new(statement, base);
    cur.skip_trivia();
    if cur.eat_keyword("INSERT") {
        cur.skip_trivia();
        cur.eat_keyword("IGNORE");
        cur.skip_trivia();
        if !cur.eat_keyword("INTO") {
            return Err(cur.error("expected INTO after INSERT"));
        }
        cur.skip_trivia();
        let name = cur.parse_identifier()?;
        if name != table.name() {
            return Ok(());
        }
        *table_seen = true;
        cur.skip_trivia();
        if cur.peek() == Some('(') {
            cur.skip_parenthesized()?;
            cur.skip_trivia();
        }
        if !(cur.eat_keyword("VALUES") || cur.eat_keyword("VALUE")) {
            return Err(cur.error("expected VALUES"));
        }
        parse_tuples(&mut cur, table, records)?;
    } else if cur.eat_keyword("CREATE") {
        cur.skip_trivia();
        if cur.eat_keyword("TABLE") {
            cur.skip_trivia();
            cur.eat_keyword("IF");
            cur.skip_trivia();
            cur.eat_keyword("NOT");
            cur.skip_trivia();
            cur.eat_keyword("EXISTS");
            cur.skip_trivia();
            if let Ok(name) = cur.parse_identifier() {
                if name == table.name() {
                    *table_seen = true;
                }
            }
        }
    }
    Ok(())
}

fn parse_tuples(
    cur: &mut Cursor<'_>,
    table: DumpTable,
    records: &mut Vec<DumpRecord>,
) -> Result<(), IngestError> {
    loop {
        cur.skip_trivia();
        let tuple_offset = cur.stream_offset();
        if !cur.eat('(') {
            return Err(cur.error("expected '(' opening a row tuple"));
        }
        let mut values = Vec::new();
        loop {
            cur.skip_trivia();
            values.push(cur.parse_value()?);
            cur.skip_trivia();
            if cur.eat(',') {
                continue;
            }
            if cur.eat(')') {
                break;
            }
            return Err(cur.error("expected ',' or ')' in a row tuple"));
        }
        if let Some(record) = build_record(table, &values, tuple_offset)? {
            records.push(record);
        }
        cur.skip_trivia();
        if cur.eat(',') {
            continue;
        }
        if cur.at_end() {
            return Ok(());
        }
        return Err(cur.error("expected ',' or end of statement after a row tuple"));
    }
}

fn build_record(
    table: DumpTable,
    values: &[SqlValue],
    offset: usize,
) -> Result<Option<DumpRecord>, IngestError> {
    let field_error = |what: &str| IngestError::SyntaxError {
        offset,
        reason: format!("{} row: {what}", table.name()),
    };
    match table {
        DumpTable::Page => {
            let [id, namespace, title, ..] = values else {
                return Err(field_error("expected at least 3 fields"));
            };
            let page_id = id
                .as_u64()
                .ok_or_else(|| field_error("page_id must be a non-negative integer"))?;
            let namespace = namespace
                .as_i64()
                .ok_or_else(|| field_error("page_namespace must be an integer"))?;
            let title = title
                .as_str()
                .ok_or_else(|| field_error("page_title must be a string"))?;
            if namespace != 0 {
                return Ok(None);
            }
            Ok(Some(DumpRecord::Page(PageRow {
                page_id,
                namespace,
                title: title.to_owned(),
            })))
        }
        DumpTable::Langlinks => {
            let [from, lang, title, ..] = values else {
                return Err(field_error("expected at least 3 fields"));
            };
            let from_page_id = from
                .as_u64()
                .ok_or_else(|| field_error("ll_from must be a non-negative integer"))?;
            let lang = lang
                .as_str()
                .ok_or_else(|| field_error("ll_lang must be a string"))?;
            let target_title = title
                .as_str()
                .ok_or_else(|| field_error("ll_title must be a string"))?;
            let Some(lang_code) = normalize_lang_code(lang) else {
                return Ok(None);
            };
            Ok(Some(DumpRecord::LangLink(LangLinkRow {
                from_page_id,
                lang_code,
                target_title: target_title.to_owned(),
            })))
        }
    }
}

fn normalize_lang_code(raw: &str) -> Option<String> {
    let code = raw.trim().to_ascii_lowercase();
    if !code.is_empty() && code.chars().all(|c| c.is_ascii_lowercase() || c == '-') {
        Some(code)
    } else {
        None
    }
}

#[derive(Debug, PartialEq)]
enum SqlValue {
    Str(String),
    Num(String),
    Null,
}

impl SqlValue {
    fn as_u64(&self) -> Option<u64> {
        match self {
            SqlValue::Num(text) => text.parse().ok(),
            _ => None,
        }
    }

    fn as_i64(&self) -> Option<i64> {
        match self {
            SqlValue::Num(text) => text.parse().ok(),
            _ => None,
        }
    }

    fn as_str(&self) -> Option<&str> {
        match self {
            SqlValue::Str(text) => Some(text),
            _ => None,
        }
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    base: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str, base: usize) -> Self {
        Cursor { text, pos: 0, base }
    }

    fn stream_offset(&self) -> usize {
        self.base + self.pos
    }

    fn error(&self, reason: &str) -> IngestError {
        IngestError::SyntaxError {
            offset: self.stream_offset(),
            reason: reason.to_owned(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let ch = self.peek()?;
        self.pos += ch.len_utf8();
        Some(ch)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.text.len()
    }

    fn eat(&mut self, expected: char) -> bool {
        if self.peek() == Some(expected) {
            self.pos += expected.len_utf8();
            true
        } else {
            false
        }
    }

    /// Consumes a case-insensitive keyword if it is followed by a
    /// non-identifier character.
    fn eat_keyword(&mut self, keyword: &str) -> bool {
        let rest = self.rest();
        if rest.len() < keyword.len() || !rest[..keyword.len()].eq_ignore_ascii_case(keyword) {
            return false;
        }
        let follows = rest[keyword.len()..].chars().next();
        if matches!(follows, Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            return false;
        }
        self.pos += keyword.len();
        true
    }

    fn skip_trivia(&mut self) {
        loop {
            let rest = self.rest();
            if let Some(ch) = rest.chars().next() {
                if ch.is_whitespace() {
                    self.pos += ch.len_utf8();
                    continue;
                }
            }
            if rest.starts_with("--") || rest.starts_with('#') {
                match rest.find('\n') {
                    Some(nl) => self.pos += nl + 1,
                    None => self.pos = self.text.len(),
                }
                continue;
            }
            if let Some(body) = rest.strip_prefix("/*") {
                match body.find("*/") {
                    Some(end) => self.pos += 2 + end + 2,
                    None => self.pos = self.text.len(),
                }
                continue;
            }
            break;
        }
    }

    fn parse_identifier(&mut self) -> Result<String, IngestError> {
        if self.eat('`') {
            let rest = self.rest();
            let Some(end) = rest.find('`') else {
                return Err(self.error("unterminated backtick identifier"));
            };
            let name = rest[..end].to_owned();
            self.pos += end + 1;
            return Ok(name);
        }
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_' || c == '$') {
            self.bump();
        }
        if self.pos == start {
            return Err(self.error("expected an identifier"));
        }
        Ok(self.text[start..self.pos].to_owned())
    }

    /// Skips a balanced parenthesized group (used for column lists).
    fn skip_parenthesized(&mut self) -> Result<(), IngestError> {
        let open = self.stream_offset();
        if !self.eat('(') {
            return Err(self.error("expected '('"));
        }
        let mut depth = 1usize;
        while let Some(ch) = self.bump() {
            match ch {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        return Ok(());
                    }
                }
                '\'' | '"' | '`' => self.skip_quoted(ch)?,
                _ => {}
            }
        }
        Err(IngestError::SyntaxError {
            offset: open,
            reason: "unbalanced parentheses".to_owned(),
        })
    }

    fn skip_quoted(&mut self, quote: char) -> Result<(), IngestError> {
        while let Some(ch) = self.bump() {
            if ch == '\\' && quote != '`' {
                self.bump();
            } else if ch == quote {
                return Ok(());
            }
        }
        Err(self.error("unterminated quoted token"))
    }

    fn parse_value(&mut self) -> Result<SqlValue, IngestError> {
        match self.peek() {
            Some('\'') => self.parse_string().map(SqlValue::Str),
            Some('N') | Some('n') => {
                if self.eat_keyword("NULL") {
                    Ok(SqlValue::Null)
                } else {
                    Err(self.error("expected NULL"))
                }
            }
            Some(c) if c.is_ascii_digit() || c == '-' || c == '+' || c == '.' => {
                let start = self.pos;
                while matches!(
                    self.peek(),
                    Some(c) if c.is_ascii_digit() || matches!(c, '-' | '+' | '.' | 'e' | 'E')
                ) {
                    self.bump();
                }
                Ok(SqlValue::Num(self.text[start..self.pos].to_owned()))
            }
            _ => Err(self.error("expected a value (string, number, or NULL)")),
        }
    }

    /// Decodes a singly-quoted SQL string with backslash escapes and `''`
    /// doubling.
    fn parse_string(&mut self) -> Result<String, IngestError> {
        let open = self.stream_offset();
        let unterminated = |at: usize| IngestError::SyntaxError {
            offset: at,
            reason: "unterminated string literal".to_owned(),
        };
        if !self.eat('\'') {
            return Err(self.error("expected a string literal"));
        }
        let mut out = String::new();
        loop {
            let Some(ch) = self.bump() else {
                return Err(unterminated(open));
            };
            match ch {
                '\\' => {
                    let Some(escaped) = self.bump() else {
                        return Err(unterminated(open));
                    };
                    out.push(match escaped {
                        'n' => '\n',
                        't' => '\t',
                        'r' => '\r',
                        '0' => '\0',
                        'b' => '\u{8}',
                        'Z' => '\u{1a}',
                        other => other,
                    });
                }
                '\'' => {
                    if self.peek() == Some('\'') {
                        self.bump();
                        out.push('\'');
                    } else {
                        return Ok(out);
                    }
                }
                other => out.push(other),
            }
        }
    }
}
