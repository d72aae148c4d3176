//! N-Triples reading and writing.
//!
//! Parsing is line-oriented and recovers per line: a malformed statement
//! produces an error diagnostic and no triple, and parsing continues with the
//! next line. Writing is canonical: triples are sorted by the N-Triples form
//! of subject, predicate and object, so equal stores serialize to identical
//! bytes.

use std::collections::HashSet;
use std::fmt;
use std::io::{self, BufRead, Write};

use crate::store::{Origin, Triple, TripleStore};
use crate::term::{is_language_tag, iri_char_needs_escape, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDiagnostic {
    /// 1-based.
    pub line: usize,
    /// 1-based, counted in characters.
    pub column: usize,
    pub message: String,
    pub severity: Severity,
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let level = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{}:{}: {level}: {}", self.line, self.column, self.message)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParseOutcome {
    /// Triples that were not already in the store.
    pub triples_added: usize,
    pub diagnostics: Vec<ParseDiagnostic>,
}

impl ParseOutcome {
    pub fn errors(&self) -> impl Iterator<Item = &ParseDiagnostic> {
        self.diagnostics
            .iter()
            .filter(|d| d.severity == Severity::Error)
    }

    pub fn has_errors(&self) -> bool {
        self.errors().next().is_some()
    }
}

/// Which triples to serialize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OriginFilter {
    #[default]
    All,
    Base,
    Inferred,
}

impl OriginFilter {
    fn accepts(self, origin: Origin) -> bool {
        match self {
            OriginFilter::All => true,
            OriginFilter::Base => origin == Origin::Base,
            OriginFilter::Inferred => origin == Origin::Inferred,
        }
    }
}

/// A syntax error inside one line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineError {
    pub column: usize,
    pub message: String,
}

/// Parses N-Triples text into `store` as base triples.
pub fn parse_ntriples(text: &str, store: &mut TripleStore) -> ParseOutcome {
    let mut reader = LoadState::default();
    for (i, line) in text.split('\n').enumerate() {
        reader.line(i + 1, line, store);
    }
    reader.outcome
}

/// Streaming variant of [`parse_ntriples`]. Read failures end the stream with
/// an error diagnostic rather than an `Err`.
pub fn parse_ntriples_reader<R: BufRead>(reader: R, store: &mut TripleStore) -> ParseOutcome {
    let mut state = LoadState::default();
    let mut line_no = 0;
    for line in reader.lines() {
        line_no += 1;
        match line {
            Ok(line) => state.line(line_no, &line, store),
            Err(err) => {
                state.outcome.diagnostics.push(ParseDiagnostic {
                    line: line_no,
                    column: 1,
                    message: format!("read error: {err}"),
                    severity: Severity::Error,
                });
                break;
            }
        }
    }
    state.outcome
}

#[derive(Default)]
struct LoadState {
    outcome: ParseOutcome,
    seen: HashSet<Triple>,
}

impl LoadState {
    fn line(&mut self, line_no: usize, line: &str, store: &mut TripleStore) {
        let diag = |column: usize, message: String, severity| ParseDiagnostic {
            line: line_no,
            column,
            message,
            severity,
        };
        match parse_line(line) {
            Ok(None) => {}
            Ok(Some((s, p, o))) => {
                let ids = store
                    .intern(s)
                    .and_then(|s| Ok((s, store.intern(p)?, store.intern(o)?)));
                let result = ids.and_then(|(s, p, o)| {
                    let t = Triple::new(s, p, o);
                    store.insert(t, Origin::Base).map(|added| (t, added))
                });
                match result {
                    Ok((t, true)) => {
                        self.outcome.triples_added += 1;
                        self.seen.insert(t);
                    }
                    Ok((t, false)) => {
                        if !self.seen.insert(t) {
                            self.outcome.diagnostics.push(diag(
                                1,
                                "duplicate statement".into(),
                                Severity::Warning,
                            ));
                        }
                    }
                    Err(err) => self
                        .outcome
                        .diagnostics
                        .push(diag(1, err.to_string(), Severity::Error)),
                }
            }
            Err(err) => self
                .outcome
                .diagnostics
                .push(diag(err.column, err.message, Severity::Error)),
        }
    }
}

/// Parses a single N-Triples line. Blank and comment-only lines yield `None`.
pub fn parse_line(line: &str) -> Result<Option<(Term, Term, Term)>, LineError> {
    let line = line.strip_suffix('\r').unwrap_or(line);
    let mut cur = Cursor::new(line);
    cur.skip_ws();
    if cur.at_end() || cur.peek() == Some('#') {
        return Ok(None);
    }
    let subject = match cur.peek() {
        Some('<') => Term::Iri(cur.iri()?),
        Some('_') => Term::BlankNode(cur.blank()?),
        _ => return Err(cur.error("expected IRI or blank node as subject")),
    };
    cur.skip_ws();
    let predicate = match cur.peek() {
        Some('<') => Term::Iri(cur.iri()?),
        _ => return Err(cur.error("expected IRI as predicate")),
    };
    cur.skip_ws();
    let object = match cur.peek() {
        Some('<') => Term::Iri(cur.iri()?),
        Some('_') => Term::BlankNode(cur.blank()?),
        Some('"') => cur.literal()?,
        _ => return Err(cur.error("expected IRI, blank node or literal as object")),
    };
    cur.skip_ws();
    if cur.peek() != Some('.') {
        return Err(cur.error("expected '.' to end the statement"));
    }
    cur.bump();
    cur.skip_ws();
    if !cur.at_end() && cur.peek() != Some('#') {
        return Err(cur.error("unexpected content after '.'"));
    }
    Ok(Some((subject, predicate, object)))
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn new(line: &str) -> Self {
        Cursor {
            chars: line.chars().collect(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(' ' | '\t')) {
            self.pos += 1;
        }
    }

    fn error(&self, message: impl Into<String>) -> LineError {
        self.error_at(self.pos, message)
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> LineError {
        LineError {
            column: pos + 1,
            message: message.into(),
        }
    }

    fn iri(&mut self) -> Result<String, LineError> {
        let start = self.pos;
        self.bump(); // '<'
        let mut out = String::new();
        loop {
            match self.bump() {
                None => return Err(self.error_at(start, "unterminated IRI")),
                Some('>') => return Ok(out),
                Some('\\') => match self.bump() {
                    Some('u') => out.push(self.hex_escape(4)?),
                    Some('U') => out.push(self.hex_escape(8)?),
                    _ => return Err(self.error_at(self.pos - 1, "invalid escape in IRI")),
                },
                Some(c) if iri_char_needs_escape(c) => {
                    return Err(self.error_at(self.pos - 1, format!("character {c:?} not allowed in IRI")))
                }
                Some(c) => out.push(c),
            }
        }
    }

    fn hex_escape(&mut self, digits: usize) -> Result<char, LineError> {
        let start = self.pos;
        let mut value = 0u32;
        for _ in 0..digits {
            let d = self
                .bump()
                .and_then(|c| c.to_digit(16))
                .ok_or_else(|| self.error_at(start, "malformed \\u escape"))?;
            value = value * 16 + d;
        }
        char::from_u32(value).ok_or_else(|| self.error_at(start, "escape is not a Unicode scalar value"))
    }

    fn blank(&mut self) -> Result<String, LineError> {
        let start = self.pos;
        if self.bump() != Some('_') || self.bump() != Some(':') {
            return Err(self.error_at(start, "expected '_:' blank node prefix"));
        }
        let label_start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || matches!(c, '_' | '-' | '.') {
                self.pos += 1;
            } else {
                break;
            }
        }
        // a trailing '.' terminates the statement, not the label
        while self.pos > label_start && self.chars[self.pos - 1] == '.' {
            self.pos -= 1;
        }
        if self.pos == label_start {
            return Err(self.error_at(start, "empty blank node label"));
        }
        Ok(self.chars[label_start..self.pos].iter().collect())
    }

    fn literal(&mut self) -> Result<Term, LineError> {
        let start = self.pos;
        self.bump(); // '"'
        let mut lexical = String::new();
        loop {
            match self.bump() {
                None => return Err(self.error_at(start, "unterminated literal")),
                Some('"') => break,
                Some('\\') => {
                    let c = match self.bump() {
                        Some('t') => '\t',
                        Some('b') => '\u{8}',
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('f') => '\u{c}',
                        Some('"') => '"',
                        Some('\'') => '\'',
                        Some('\\') => '\\',
                        Some('u') => self.hex_escape(4)?,
                        Some('U') => self.hex_escape(8)?,
                        _ => return Err(self.error_at(self.pos - 1, "invalid escape in literal")),
                    };
                    lexical.push(c);
                }
                Some(c) => lexical.push(c),
            }
        }
        match self.peek() {
            Some('^') => {
                if self.bump() != Some('^') || self.bump() != Some('^') {
                    return Err(self.error_at(self.pos - 1, "expected '^^' before datatype"));
                }
                if self.peek() != Some('<') {
                    return Err(self.error("expected datatype IRI"));
                }
                let dt = self.iri()?;
                Ok(Term::typed_literal(lexical, dt))
            }
            Some('@') => {
                self.bump();
                let tag_start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '-') {
                    self.pos += 1;
                }
                let tag: String = self.chars[tag_start..self.pos].iter().collect();
                if !is_language_tag(&tag) {
                    return Err(self.error_at(tag_start, format!("malformed language tag {tag:?}")));
                }
                Ok(Term::lang_literal(lexical, tag))
            }
            _ => Ok(Term::literal(lexical)),
        }
    }
}

/// Serializes the selected triples in canonical order, one per line.
pub fn write_ntriples(store: &TripleStore, filter: OriginFilter) -> String {
    let mut out = Vec::new();
    write_ntriples_to(store, filter, &mut out).expect("writing to a Vec cannot fail");
    String::from_utf8(out).expect("N-Triples output is UTF-8")
}

pub fn write_ntriples_to<W: Write>(
    store: &TripleStore,
    filter: OriginFilter,
    mut out: W,
) -> io::Result<()> {
    let rendered: Vec<String> = store.terms().map(|(_, t)| t.to_ntriples()).collect();
    let mut rows: Vec<(&str, &str, &str)> = store
        .iter()
        .filter(|t| store.origin(t).is_some_and(|o| filter.accepts(o)))
        .map(|t| {
            (
                rendered[t.s.index()].as_str(),
                rendered[t.p.index()].as_str(),
                rendered[t.o.index()].as_str(),
            )
        })
        .collect();
    rows.sort_unstable();
    for (s, p, o) in rows {
        writeln!(out, "{s} {p} {o} .")?;
    }
    Ok(())
}
