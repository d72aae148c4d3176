//! Dictionary-encoded triple store with SPO, POS and OSP indexes.
//!
//! Every distinct [`Term`] is interned once and addressed by a dense
//! [`TermId`], numbered in first-seen order. Triples are kept in three
//! ordered indexes so that any combination of bound positions is answered by
//! a prefix range scan. Each triple also carries an [`Origin`]: whether it was
//! asserted by the user or produced by the reasoner.
//!
//! Mutation needs `&mut self`; readers share `&self`, so the usual borrow
//! rules give the single-writer, multi-reader contract for free.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::Bound;

use thiserror::Error;

use crate::term::{MalformedTerm, Term};

/// Dense handle for an interned term, stable for the lifetime of its store.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TermId(pub u32);

impl TermId {
    pub const MIN: TermId = TermId(0);
    pub const MAX: TermId = TermId(u32::MAX);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for TermId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub s: TermId,
    pub p: TermId,
    pub o: TermId,
}

impl Triple {
    pub fn new(s: TermId, p: TermId, o: TermId) -> Self {
        Triple { s, p, o }
    }
}

/// Where a stored triple came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Origin {
    Base,
    Inferred,
}

/// A triple lookup with optional bound positions.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Pattern {
    pub s: Option<TermId>,
    pub p: Option<TermId>,
    pub o: Option<TermId>,
}

impl Pattern {
    pub fn new(s: Option<TermId>, p: Option<TermId>, o: Option<TermId>) -> Self {
        Pattern { s, p, o }
    }

    pub fn any() -> Self {
        Pattern::default()
    }

    pub fn exact(t: Triple) -> Self {
        Pattern::new(Some(t.s), Some(t.p), Some(t.o))
    }

    pub fn matches(&self, t: &Triple) -> bool {
        self.s.is_none_or(|s| s == t.s)
            && self.p.is_none_or(|p| p == t.p)
            && self.o.is_none_or(|o| o == t.o)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IndexKind {
    Spo,
    Pos,
    Osp,
}

impl IndexKind {
    pub const ALL: [IndexKind; 3] = [IndexKind::Spo, IndexKind::Pos, IndexKind::Osp];

    /// The index whose key order gives the longest bound prefix.
    pub fn for_bound(s: bool, p: bool, o: bool) -> IndexKind {
        match (s, p, o) {
            (true, true, _) => IndexKind::Spo,
            (true, false, true) => IndexKind::Osp,
            (true, false, false) => IndexKind::Spo,
            (false, true, _) => IndexKind::Pos,
            (false, false, true) => IndexKind::Osp,
            (false, false, false) => IndexKind::Spo,
        }
    }

    pub fn for_pattern(pattern: &Pattern) -> IndexKind {
        IndexKind::for_bound(pattern.s.is_some(), pattern.p.is_some(), pattern.o.is_some())
    }

    fn key(self, t: Triple) -> Key {
        match self {
            IndexKind::Spo => (t.s, t.p, t.o),
            IndexKind::Pos => (t.p, t.o, t.s),
            IndexKind::Osp => (t.o, t.s, t.p),
        }
    }

    fn unkey(self, (a, b, c): Key) -> Triple {
        match self {
            IndexKind::Spo => Triple::new(a, b, c),
            IndexKind::Pos => Triple::new(c, a, b),
            IndexKind::Osp => Triple::new(b, c, a),
        }
    }

    fn components(self, pattern: &Pattern) -> [Option<TermId>; 3] {
        match self {
            IndexKind::Spo => [pattern.s, pattern.p, pattern.o],
            IndexKind::Pos => [pattern.p, pattern.o, pattern.s],
            IndexKind::Osp => [pattern.o, pattern.s, pattern.p],
        }
    }
}

impl fmt::Display for IndexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IndexKind::Spo => "SPO",
            IndexKind::Pos => "POS",
            IndexKind::Osp => "OSP",
        })
    }
}

type Key = (TermId, TermId, TermId);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StoreError {
    #[error("malformed term: {0}")]
    MalformedTerm(#[from] MalformedTerm),
    #[error("subject {0} is a literal")]
    LiteralSubject(String),
    #[error("predicate {0} is not an IRI")]
    NonIriPredicate(String),
    #[error("term id {0} was never interned in this store")]
    UnknownTermId(TermId),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StoreStats {
    pub term_count: usize,
    pub triple_count: usize,
    pub base_count: usize,
    pub inferred_count: usize,
}

#[derive(Debug, Clone, Default)]
pub struct TripleStore {
    terms: Vec<Term>,
    ids: HashMap<Term, TermId>,
    origins: HashMap<Triple, Origin>,
    spo: BTreeSet<Key>,
    pos: BTreeSet<Key>,
    osp: BTreeSet<Key>,
    base_count: usize,
}

impl TripleStore {
    pub fn new() -> Self {
        Self::default()
    }

    /// Interns `term`, returning its existing id when already known.
    pub fn intern(&mut self, term: Term) -> Result<TermId, StoreError> {
        if let Some(&id) = self.ids.get(&term) {
            return Ok(id);
        }
        term.validate()?;
        let id = TermId(u32::try_from(self.terms.len()).expect("term dictionary overflow"));
        self.terms.push(term.clone());
        self.ids.insert(term, id);
        Ok(id)
    }

    pub fn lookup(&self, term: &Term) -> Option<TermId> {
        self.ids.get(term).copied()
    }

    pub fn lookup_iri(&self, iri: &str) -> Option<TermId> {
        self.lookup(&Term::Iri(iri.to_owned()))
    }

    /// Resolves an id. Panics on ids from another store; use [`Self::try_term`]
    /// for untrusted handles.
    pub fn term(&self, id: TermId) -> &Term {
        &self.terms[id.index()]
    }

    pub fn try_term(&self, id: TermId) -> Option<&Term> {
        self.terms.get(id.index())
    }

    pub fn terms(&self) -> impl Iterator<Item = (TermId, &Term)> {
        self.terms
            .iter()
            .enumerate()
            .map(|(i, t)| (TermId(i as u32), t))
    }

    /// Checks the triple invariants without inserting.
    pub fn validate(&self, t: &Triple) -> Result<(), StoreError> {
        let s = self.try_term(t.s).ok_or(StoreError::UnknownTermId(t.s))?;
        let p = self.try_term(t.p).ok_or(StoreError::UnknownTermId(t.p))?;
        self.try_term(t.o).ok_or(StoreError::UnknownTermId(t.o))?;
        if s.is_literal() {
            return Err(StoreError::LiteralSubject(s.to_ntriples()));
        }
        if !p.is_iri() {
            return Err(StoreError::NonIriPredicate(p.to_ntriples()));
        }
        Ok(())
    }

    pub fn is_well_formed(&self, t: &Triple) -> bool {
        self.validate(t).is_ok()
    }

    /// Inserts `t`, returning `true` iff it was absent.
    ///
    /// Re-asserting an inferred triple as base upgrades its origin but still
    /// reports `false`.
    pub fn insert(&mut self, t: Triple, origin: Origin) -> Result<bool, StoreError> {
        self.validate(&t)?;
        match self.origins.get_mut(&t) {
            Some(existing) => {
                if *existing == Origin::Inferred && origin == Origin::Base {
                    *existing = Origin::Base;
                    self.base_count += 1;
                }
                Ok(false)
            }
            None => {
                self.origins.insert(t, origin);
                self.spo.insert(IndexKind::Spo.key(t));
                self.pos.insert(IndexKind::Pos.key(t));
                self.osp.insert(IndexKind::Osp.key(t));
                if origin == Origin::Base {
                    self.base_count += 1;
                }
                Ok(true)
            }
        }
    }

    /// Interns the three terms and inserts the resulting triple.
    pub fn insert_terms(
        &mut self,
        s: Term,
        p: Term,
        o: Term,
        origin: Origin,
    ) -> Result<bool, StoreError> {
        let t = Triple::new(self.intern(s)?, self.intern(p)?, self.intern(o)?);
        self.insert(t, origin)
    }

    pub fn contains(&self, t: &Triple) -> bool {
        self.origins.contains_key(t)
    }

    pub fn origin(&self, t: &Triple) -> Option<Origin> {
        self.origins.get(t).copied()
    }

    pub fn len(&self) -> usize {
        self.origins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.origins.is_empty()
    }

    /// All triples in SPO order.
    pub fn iter(&self) -> impl Iterator<Item = Triple> + '_ {
        self.spo.iter().map(|&k| IndexKind::Spo.unkey(k))
    }

    /// Triples matching every bound position, in the order of the index
    /// chosen by [`IndexKind::for_pattern`].
    pub fn matching(&self, pattern: Pattern) -> Box<dyn Iterator<Item = Triple> + '_> {
        self.scan(IndexKind::for_pattern(&pattern), pattern)
    }

    /// Answers `pattern` from one specific index, filtering any bound
    /// positions that are not part of that index's prefix.
    pub fn scan(&self, index: IndexKind, pattern: Pattern) -> Box<dyn Iterator<Item = Triple> + '_> {
        if let (Some(s), Some(p), Some(o)) = (pattern.s, pattern.p, pattern.o) {
            let t = Triple::new(s, p, o);
            return Box::new(self.contains(&t).then_some(t).into_iter());
        }
        let set = match index {
            IndexKind::Spo => &self.spo,
            IndexKind::Pos => &self.pos,
            IndexKind::Osp => &self.osp,
        };
        let comps = index.components(&pattern);
        let (lo, hi) = match comps {
            [Some(a), Some(b), _] => ((a, b, TermId::MIN), (a, b, TermId::MAX)),
            [Some(a), None, _] => ((a, TermId::MIN, TermId::MIN), (a, TermId::MAX, TermId::MAX)),
            _ => (
                (TermId::MIN, TermId::MIN, TermId::MIN),
                (TermId::MAX, TermId::MAX, TermId::MAX),
            ),
        };
        Box::new(
            set.range((Bound::Included(lo), Bound::Included(hi)))
                .map(move |&k| index.unkey(k))
                .filter(move |t| pattern.matches(t)),
        )
    }

    pub fn count(&self, pattern: Pattern) -> usize {
        self.matching(pattern).count()
    }

    /// Whether `id` occurs in predicate position of any stored triple.
    pub fn is_used_as_predicate(&self, id: TermId) -> bool {
        self.matching(Pattern::new(None, Some(id), None))
            .next()
            .is_some()
    }

    pub fn stats(&self) -> StoreStats {
        StoreStats {
            term_count: self.terms.len(),
            triple_count: self.origins.len(),
            base_count: self.base_count,
            inferred_count: self.origins.len() - self.base_count,
        }
    }

    /// Resolves a triple to its three terms.
    pub fn resolve(&self, t: &Triple) -> (&Term, &Term, &Term) {
        (self.term(t.s), self.term(t.p), self.term(t.o))
    }

    /// The triple set as terms, for comparisons across stores.
    pub fn to_term_set(&self) -> BTreeSet<(Term, Term, Term)> {
        self.iter()
            .map(|t| {
                let (s, p, o) = self.resolve(&t);
                (s.clone(), p.clone(), o.clone())
            })
            .collect()
    }

    /// Renders one triple as an N-Triples statement without the newline.
    pub fn format_triple(&self, t: &Triple) -> String {
        let (s, p, o) = self.resolve(t);
        format!("{s} {p} {o} .")
    }
}
