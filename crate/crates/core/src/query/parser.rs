use std::collections::HashMap;

use super::{PatternTerm, Projection, Query, QueryError, TriplePattern};
use crate::term::{is_language_tag, iri_char_needs_escape, Term};
use crate::vocab::RDF_TYPE;

/// Parses one query.
///
/// ```text
/// PREFIX ex: <http://example.org/>
/// SELECT DISTINCT ?x WHERE { ?x a ex:Professor . ?x ex:worksFor ?u }
/// ```
pub fn parse_query(text: &str) -> Result<Query, QueryError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        line: 1,
        col: 1,
        prefixes: HashMap::new(),
    };
    p.query()
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
    prefixes: HashMap<String, String>,
}

type Res<T> = Result<T, QueryError>;

impl Parser {
    fn query(&mut self) -> Res<Query> {
        self.ws();
        while self.at_keyword("PREFIX") {
            self.keyword("PREFIX")?;
            self.ws();
            let (line, column) = (self.line, self.col);
            let prefix = self.pname_prefix()?;
            if self.bump() != Some(':') {
                return Err(self.syntax_at(line, column, "expected prefix name ending in ':'"));
            }
            self.ws();
            let iri = self.iri_ref()?;
            self.prefixes.insert(prefix, iri);
            self.ws();
        }

        self.keyword("SELECT")?;
        self.ws();
        let distinct = self.at_keyword("DISTINCT");
        if distinct {
            self.keyword("DISTINCT")?;
            self.ws();
        }
        let projection = if self.peek() == Some('*') {
            self.bump();
            Projection::All
        } else {
            let mut vars = Vec::new();
            while matches!(self.peek(), Some('?' | '$')) {
                vars.push(self.variable()?);
                self.ws();
            }
            if vars.is_empty() {
                return Err(self.syntax("expected '*' or at least one variable"));
            }
            Projection::Vars(vars)
        };
        self.ws();
        if self.at_keyword("WHERE") {
            self.keyword("WHERE")?;
            self.ws();
        }
        let (open_line, open_col) = (self.line, self.col);
        self.expect('{')?;

        let mut bgp = Vec::new();
        loop {
            self.ws();
            if self.peek() == Some('}') {
                break;
            }
            let (line, column) = (self.line, self.col);
            let s = self.term()?;
            if matches!(s, PatternTerm::Const(Term::Literal { .. })) {
                return Err(self.syntax_at(line, column, "literal in subject position"));
            }
            self.ws();
            let p = self.predicate()?;
            self.ws();
            let o = self.term()?;
            bgp.push(TriplePattern::new(s, p, o));
            self.ws();
            match self.peek() {
                Some('.') => {
                    self.bump();
                }
                Some('}') => break,
                _ => return Err(self.syntax("expected '.' or '}'")),
            }
        }
        self.expect('}')?;
        self.ws();
        if self.peek().is_some() {
            return Err(self.syntax("unexpected input after '}'"));
        }
        if bgp.is_empty() {
            return Err(self.syntax_at(open_line, open_col, "empty graph pattern"));
        }
        Query::new(projection, bgp, distinct)
    }

    fn predicate(&mut self) -> Res<PatternTerm> {
        if self.peek() == Some('a') && !self.peek_at(1).is_some_and(is_name_char) && self.peek_at(1) != Some(':') {
            self.bump();
            return Ok(PatternTerm::Const(Term::iri(RDF_TYPE)));
        }
        let (line, column) = (self.line, self.col);
        match self.term()? {
            PatternTerm::Const(t) if !t.is_iri() => Err(self.syntax_at(line, column, "predicate must be an IRI or a variable")),
            PatternTerm::Var(v) if v.starts_with("_:") => Err(self.syntax_at(line, column, "blank node in predicate position")),
            t => Ok(t),
        }
    }

    fn term(&mut self) -> Res<PatternTerm> {
        match self.peek() {
            Some('?' | '$') => Ok(PatternTerm::Var(self.variable()?)),
            Some('<') => Ok(PatternTerm::Const(Term::iri(self.iri_ref()?))),
            Some('"' | '\'') => Ok(PatternTerm::Const(self.literal()?)),
            Some('_') if self.peek_at(1) == Some(':') => {
                self.bump();
                self.bump();
                let label = self.name(|c| c.is_ascii_alphanumeric() || c == '_');
                if label.is_empty() {
                    return Err(self.syntax("expected blank node label"));
                }
                Ok(PatternTerm::Var(format!("_:{label}")))
            }
            Some(c) if c == ':' || is_name_start(c) => Ok(PatternTerm::Const(Term::iri(self.prefixed_name()?))),
            Some(_) => Err(self.syntax("expected a term")),
            None => Err(self.syntax("unexpected end of query")),
        }
    }

    fn variable(&mut self) -> Res<String> {
        self.bump();
        let name = self.name(|c| c.is_alphanumeric() || c == '_');
        if name.is_empty() {
            return Err(self.syntax("expected variable name"));
        }
        Ok(name)
    }

    fn iri_ref(&mut self) -> Res<String> {
        let (line, column) = (self.line, self.col);
        self.expect('<')?;
        let mut iri = String::new();
        loop {
            match self.bump() {
                Some('>') => break,
                Some(c) if iri_char_needs_escape(c) => return Err(self.syntax(format!("character {c:?} not allowed in IRI"))),
                Some(c) => iri.push(c),
                None => return Err(self.syntax_at(line, column, "unterminated IRI")),
            }
        }
        if iri.is_empty() {
            return Err(self.syntax_at(line, column, "empty IRI"));
        }
        Ok(iri)
    }

    fn pname_prefix(&mut self) -> Res<String> {
        Ok(self.name(|c| is_name_char(c) && c != ':'))
    }

    fn prefixed_name(&mut self) -> Res<String> {
        let (line, column) = (self.line, self.col);
        let prefix = self.pname_prefix()?;
        if self.bump() != Some(':') {
            return Err(self.syntax_at(line, column, format!("expected prefixed name, found {prefix:?}")));
        }
        let mut local = self.name(|c| is_name_char(c) || c == '.' || c == '%' || c == ':');
        // a trailing dot terminates the statement
        while local.ends_with('.') {
            local.pop();
            self.pos -= 1;
            self.col -= 1;
        }
        let Some(ns) = self.prefixes.get(&prefix) else {
            return Err(QueryError::UnknownPrefix { prefix, line, column });
        };
        Ok(format!("{ns}{local}"))
    }

    fn literal(&mut self) -> Res<Term> {
        let (line, column) = (self.line, self.col);
        let quote = self.bump().unwrap_or('"');
        let mut lexical = String::new();
        loop {
            match self.bump() {
                Some(c) if c == quote => break,
                Some('\\') => {
                    let c = match self.bump() {
                        Some('t') => '\t',
                        Some('b') => '\u{8}',
                        Some('n') => '\n',
                        Some('r') => '\r',
                        Some('f') => '\u{c}',
                        Some(c @ ('"' | '\'' | '\\')) => c,
                        Some('u') => self.hex(4)?,
                        Some('U') => self.hex(8)?,
                        _ => return Err(self.syntax("invalid escape")),
                    };
                    lexical.push(c);
                }
                Some('\n' | '\r') | None => return Err(self.syntax_at(line, column, "unterminated literal")),
                Some(c) => lexical.push(c),
            }
        }
        match self.peek() {
            Some('@') => {
                self.bump();
                let tag = self.name(|c| c.is_ascii_alphanumeric() || c == '-');
                if !is_language_tag(&tag) {
                    return Err(self.syntax(format!("bad language tag {tag:?}")));
                }
                Ok(Term::lang_literal(lexical, tag))
            }
            Some('^') => {
                self.bump();
                self.expect('^')?;
                let dt = if self.peek() == Some('<') {
                    self.iri_ref()?
                } else {
                    self.prefixed_name()?
                };
                Ok(Term::typed_literal(lexical, dt))
            }
            _ => Ok(Term::literal(lexical)),
        }
    }

    fn hex(&mut self, digits: usize) -> Res<char> {
        let mut v = 0u32;
        for _ in 0..digits {
            let d = self.bump().and_then(|c| c.to_digit(16)).ok_or_else(|| self.syntax("bad hex escape"))?;
            v = v * 16 + d;
        }
        char::from_u32(v).ok_or_else(|| self.syntax("escape is not a unicode scalar value"))
    }

    fn name(&mut self, accept: impl Fn(char) -> bool) -> String {
        let mut out = String::new();
        while let Some(c) = self.peek().filter(|&c| accept(c)) {
            out.push(c);
            self.bump();
        }
        out
    }

    fn at_keyword(&self, kw: &str) -> bool {
        let n = kw.len();
        self.pos + n <= self.chars.len()
            && self.chars[self.pos..self.pos + n]
                .iter()
                .zip(kw.chars())
                .all(|(a, b)| a.eq_ignore_ascii_case(&b))
            && !self.peek_at(n).is_some_and(is_name_char)
    }

    fn keyword(&mut self, kw: &str) -> Res<()> {
        if !self.at_keyword(kw) {
            return Err(self.syntax(format!("expected {kw}")));
        }
        for _ in 0..kw.len() {
            self.bump();
        }
        Ok(())
    }

    fn expect(&mut self, c: char) -> Res<()> {
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.syntax(format!("expected '{c}'")))
        }
    }

    /// Skips whitespace and `#` comments.
    fn ws(&mut self) {
        while let Some(c) = self.peek() {
            if c == '#' {
                while self.peek().is_some_and(|c| c != '\n') {
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn syntax(&self, message: impl Into<String>) -> QueryError {
        self.syntax_at(self.line, self.col, message)
    }

    fn syntax_at(&self, line: usize, column: usize, message: impl Into<String>) -> QueryError {
        QueryError::Syntax {
            line,
            column,
            message: message.into(),
        }
    }
}

fn is_name_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '-'
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{MIXED_QUERY, UNIVERSITY_QUERY};
    use crate::vocab;

    #[test]
    fn mixed_example_has_four_patterns() {
        let q = parse_query(MIXED_QUERY).unwrap();
        assert_eq!(q.bgp.len(), 4);
        assert_eq!(q.projected(), vec!["professor"]);
        assert!(!q.distinct);
        assert_eq!(q.bgp[1].p, PatternTerm::var("sp"));
        assert_eq!(
            q.bgp[2].p,
            PatternTerm::Const(Term::iri(format!("{}singletonPropertyOf", vocab::RDF_NS)))
        );
        assert_eq!(q.bgp[3].o, PatternTerm::Const(Term::literal("2009")));
        assert_eq!(parse_query(UNIVERSITY_QUERY).unwrap().bgp.len(), 1);
    }

    #[test]
    fn empty_pattern_is_a_syntax_error() {
        let err = parse_query("SELECT ?x WHERE { }").unwrap_err();
        assert!(matches!(err, QueryError::Syntax { line: 1, column: 17, .. }), "{err}");
    }

    #[test]
    fn unbound_projection() {
        let err = parse_query("SELECT ?y WHERE { ?x <ex:p> ?x . }").unwrap_err();
        assert_eq!(err, QueryError::UnboundProjection("y".into()));
    }

    #[test]
    fn unknown_prefix_is_positioned() {
        let err = parse_query("SELECT *\nWHERE { ?x foo:bar ?y }").unwrap_err();
        assert_eq!(
            err,
            QueryError::UnknownPrefix {
                prefix: "foo".into(),
                line: 2,
                column: 12
            }
        );
    }

    #[test]
    fn terms_and_keywords() {
        let q = parse_query(
            "prefix : <http://e/>\nselect distinct $a * where { $a a :C ; }",
        );
        assert!(q.is_err());
        let q = parse_query(
            "prefix : <http://e/>  # default\nselect distinct $a where { $a a :C. _:b :p \"x\\\"y\"@en-GB . _:b :q 'z'^^:dt . $a :r _:b }",
        )
        .unwrap();
        assert!(q.distinct);
        assert_eq!(q.bgp.len(), 4);
        assert_eq!(q.bgp[0].p, PatternTerm::Const(Term::iri(vocab::RDF_TYPE)));
        assert_eq!(q.bgp[0].o, PatternTerm::Const(Term::iri("http://e/C")));
        assert_eq!(q.bgp[1].s, PatternTerm::var("_:b"));
        assert_eq!(q.bgp[1].o, PatternTerm::Const(Term::lang_literal("x\"y", "en-GB")));
        assert_eq!(q.bgp[2].o, PatternTerm::Const(Term::typed_literal("z", "http://e/dt")));
        let star = parse_query("SELECT * WHERE { _:b <ex:p> ?o . ?s <ex:q> _:b }").unwrap();
        assert_eq!(star.projected(), vec!["o", "s"]);
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            "",
            "SELECT WHERE { ?x ?y ?z }",
            "SELECT ?x WHERE { ?x ?y }",
            "SELECT ?x WHERE { ?x \"lit\" ?z }",
            "SELECT ?x WHERE { \"s\" <ex:p> ?x }",
            "SELECT ?x WHERE { ?x <ex:p> ?z } LIMIT 1",
            "SELECT ?x WHERE { ?x <ex p> ?z }",
            "SELECT ?x WHERE { ?x _:b ?z }",
            "SELECT ?x WHERE { ?x <ex:p> \"open }",
        ] {
            assert!(parse_query(bad).is_err(), "{bad:?} should be rejected");
        }
    }
}
