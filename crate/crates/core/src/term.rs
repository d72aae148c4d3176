//! RDF terms and their N-Triples rendering.

use std::fmt;

use thiserror::Error;

use crate::vocab;

/// An RDF term: IRI, blank node or literal.
///
/// Equality is structural and exact; IRIs are opaque strings.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Iri(String),
    BlankNode(String),
    Literal {
        lexical: String,
        datatype: Option<String>,
        language: Option<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MalformedTerm {
    #[error("IRI must not be empty")]
    EmptyIri,
    #[error("blank node label {0:?} must match [A-Za-z0-9_]+")]
    BadBlankLabel(String),
    #[error("literal {0:?} carries both a datatype and a language tag")]
    DatatypeAndLanguage(String),
    #[error("literal datatype IRI must not be empty")]
    EmptyDatatype,
    #[error("malformed language tag {0:?}")]
    BadLanguageTag(String),
}

impl Term {
    pub fn iri(value: impl Into<String>) -> Self {
        Term::Iri(value.into())
    }

    pub fn blank(label: impl Into<String>) -> Self {
        Term::BlankNode(label.into())
    }

    /// A plain literal with neither datatype nor language tag.
    pub fn literal(lexical: impl Into<String>) -> Self {
        Term::Literal {
            lexical: lexical.into(),
            datatype: None,
            language: None,
        }
    }

    pub fn typed_literal(lexical: impl Into<String>, datatype: impl Into<String>) -> Self {
        Term::Literal {
            lexical: lexical.into(),
            datatype: Some(datatype.into()),
            language: None,
        }
    }

    pub fn lang_literal(lexical: impl Into<String>, language: impl Into<String>) -> Self {
        Term::Literal {
            lexical: lexical.into(),
            datatype: None,
            language: Some(language.into()),
        }
    }

    pub fn is_iri(&self) -> bool {
        matches!(self, Term::Iri(_))
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal { .. })
    }

    pub fn is_blank(&self) -> bool {
        matches!(self, Term::BlankNode(_))
    }

    pub fn as_iri(&self) -> Option<&str> {
        match self {
            Term::Iri(iri) => Some(iri),
            _ => None,
        }
    }

    /// The datatype a literal carries, including the implied `rdf:langString`.
    pub fn effective_datatype(&self) -> Option<&str> {
        match self {
            Term::Literal {
                datatype: Some(dt), ..
            } => Some(dt),
            Term::Literal {
                language: Some(_), ..
            } => Some(vocab::RDF_LANG_STRING),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<(), MalformedTerm> {
        match self {
            Term::Iri(iri) if iri.is_empty() => Err(MalformedTerm::EmptyIri),
            Term::Iri(_) => Ok(()),
            Term::BlankNode(label) => {
                if !label.is_empty()
                    && label.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                {
                    Ok(())
                } else {
                    Err(MalformedTerm::BadBlankLabel(label.clone()))
                }
            }
            Term::Literal {
                lexical,
                datatype,
                language,
            } => {
                if datatype.is_some() && language.is_some() {
                    return Err(MalformedTerm::DatatypeAndLanguage(lexical.clone()));
                }
                if matches!(datatype, Some(dt) if dt.is_empty()) {
                    return Err(MalformedTerm::EmptyDatatype);
                }
                if let Some(tag) = language {
                    if !is_language_tag(tag) {
                        return Err(MalformedTerm::BadLanguageTag(tag.clone()));
                    }
                }
                Ok(())
            }
        }
    }

    /// Renders the term in canonical N-Triples syntax.
    pub fn to_ntriples(&self) -> String {
        let mut out = String::new();
        write_term(&mut out, self);
        out
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ntriples())
    }
}

/// `[a-zA-Z]+ ('-' [a-zA-Z0-9]+)*`
pub(crate) fn is_language_tag(tag: &str) -> bool {
    let mut parts = tag.split('-');
    let first = parts.next().unwrap_or_default();
    if first.is_empty() || !first.chars().all(|c| c.is_ascii_alphabetic()) {
        return false;
    }
    parts.all(|p| !p.is_empty() && p.chars().all(|c| c.is_ascii_alphanumeric()))
}

pub(crate) fn write_term(out: &mut String, term: &Term) {
    match term {
        Term::Iri(iri) => write_iri(out, iri),
        Term::BlankNode(label) => {
            out.push_str("_:");
            out.push_str(label);
        }
        Term::Literal {
            lexical,
            datatype,
            language,
        } => {
            out.push('"');
            for c in lexical.chars() {
                match c {
                    '"' => out.push_str("\\\""),
                    '\\' => out.push_str("\\\\"),
                    '\n' => out.push_str("\\n"),
                    '\r' => out.push_str("\\r"),
                    c => out.push(c),
                }
            }
            out.push('"');
            if let Some(dt) = datatype {
                out.push_str("^^");
                write_iri(out, dt);
            } else if let Some(lang) = language {
                out.push('@');
                out.push_str(lang);
            }
        }
    }
}

fn write_iri(out: &mut String, iri: &str) {
    out.push('<');
    for c in iri.chars() {
        if iri_char_needs_escape(c) {
            let cp = c as u32;
            if cp <= 0xFFFF {
                out.push_str(&format!("\\u{cp:04X}"));
            } else {
                out.push_str(&format!("\\U{cp:08X}"));
            }
        } else {
            out.push(c);
        }
    }
    out.push('>');
}

pub(crate) fn iri_char_needs_escape(c: char) -> bool {
    matches!(c, '\u{0}'..='\u{20}' | '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\')
}
