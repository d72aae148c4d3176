//! Singleton properties: statements about statements as ordinary triples.
//!
//! A data triple `(s, p, o)` with metadata pairs `(m_j, v_j)` is represented
//! by minting a fresh property `p_i` that is used exactly once:
//!
//! ```text
//! p_i  singletonPropertyOf  p
//! s    p_i                  o
//! p_i  m_j                  v_j      (one per metadata pair)
//! ```
//!
//! [`reify`] builds that graph and [`extract`] reads it back. With the meta
//! axiom `singletonPropertyOf rdfs:subPropertyOf rdfs:subPropertyOf`
//! installed, an RDFS reasoner recovers `(s, p, o)` from the singleton graph.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::store::{Origin, Pattern, StoreError, TermId, Triple, TripleStore};
use crate::term::Term;
use crate::vocab;

/// IRIs of the singleton-property vocabulary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpVocabulary {
    pub singleton_property_of: String,
    pub singleton_property: String,
}

impl Default for SpVocabulary {
    fn default() -> Self {
        SpVocabulary::with_namespace(vocab::RDF_NS)
    }
}

impl SpVocabulary {
    /// Places `singletonPropertyOf` and `SingletonProperty` under `namespace`.
    pub fn with_namespace(namespace: &str) -> Self {
        SpVocabulary {
            singleton_property_of: format!("{namespace}singletonPropertyOf"),
            singleton_property: format!("{namespace}SingletonProperty"),
        }
    }

    /// The six primitive triples describing the vocabulary.
    pub fn primitive_triples(&self) -> Vec<(Term, Term, Term)> {
        let iri = |s: &str| Term::iri(s);
        let spo = || iri(&self.singleton_property_of);
        let sp_class = || iri(&self.singleton_property);
        vec![
            (spo(), iri(vocab::RDF_TYPE), iri(vocab::RDF_PROPERTY)),
            (spo(), iri(vocab::RDF_TYPE), iri(vocab::RDF_RESOURCE)),
            (spo(), iri(vocab::RDFS_DOMAIN), sp_class()),
            (spo(), iri(vocab::RDFS_RANGE), iri(vocab::RDF_PROPERTY)),
            (sp_class(), iri(vocab::RDF_TYPE), iri(vocab::RDFS_CLASS)),
            (sp_class(), iri(vocab::RDFS_SUB_CLASS_OF), iri(vocab::RDF_PROPERTY)),
        ]
    }

    /// `singletonPropertyOf rdfs:subPropertyOf rdfs:subPropertyOf`
    pub fn meta_axiom(&self) -> (Term, Term, Term) {
        (
            Term::iri(&self.singleton_property_of),
            Term::iri(vocab::RDFS_SUB_PROPERTY_OF),
            Term::iri(vocab::RDFS_SUB_PROPERTY_OF),
        )
    }

    /// Primitive triples, followed by the meta axiom when requested.
    pub fn axioms(&self, include_meta_axiom: bool) -> Vec<(Term, Term, Term)> {
        let mut out = self.primitive_triples();
        if include_meta_axiom {
            out.push(self.meta_axiom());
        }
        out
    }
}

/// One singleton property together with the statement it stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingletonDescriptor {
    pub sp: TermId,
    pub generic: TermId,
    pub subject: TermId,
    pub object: TermId,
    pub meta: Vec<(TermId, TermId)>,
}

impl SingletonDescriptor {
    /// `(subject, generic, object)`: the statement the singleton describes.
    pub fn data_triple(&self) -> Triple {
        Triple::new(self.subject, self.generic, self.object)
    }

    /// The `2 + meta.len()` triples of the singleton graph.
    pub fn triples(&self, singleton_property_of: TermId) -> Vec<Triple> {
        let mut out = vec![
            Triple::new(self.sp, singleton_property_of, self.generic),
            Triple::new(self.subject, self.sp, self.object),
        ];
        out.extend(self.meta.iter().map(|&(m, v)| Triple::new(self.sp, m, v)));
        out
    }
}

/// How fresh singleton property IRIs are spelled.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum MintScheme {
    /// `<generic>#<n>`, or `<generic>.<n>` when the generic IRI already has a
    /// fragment.
    #[default]
    Fragment,
    /// A template where `{generic}` and `{n}` are substituted.
    Template(String),
}

/// Issues singleton property IRIs from one counter shared by all generics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingletonMinter {
    counter: u64,
    scheme: MintScheme,
}

impl Default for SingletonMinter {
    fn default() -> Self {
        SingletonMinter::new(1)
    }
}

impl SingletonMinter {
    pub fn new(start: u64) -> Self {
        SingletonMinter {
            counter: start,
            scheme: MintScheme::Fragment,
        }
    }

    pub fn with_scheme(start: u64, scheme: MintScheme) -> Self {
        SingletonMinter {
            counter: start,
            scheme,
        }
    }

    /// The value the next mint will use.
    pub fn counter(&self) -> u64 {
        self.counter
    }

    pub fn next_iri(&mut self, generic: &str) -> String {
        let n = self.counter;
        self.counter += 1;
        match &self.scheme {
            MintScheme::Fragment if generic.contains('#') => format!("{generic}.{n}"),
            MintScheme::Fragment => format!("{generic}#{n}"),
            MintScheme::Template(t) => t.replace("{generic}", generic).replace("{n}", &n.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SingletonError {
    #[error("predicate {0} is not an IRI")]
    NonIriPredicate(String),
    #[error("minted IRI {0} is already used as a predicate")]
    MintCollision(String),
    #[error("{0} has no singletonPropertyOf assertion")]
    NotASingleton(String),
    #[error("{sp} is not a singleton: {reason}")]
    AmbiguousSingleton { sp: String, reason: String },
    #[error("{0} is declared a singleton property but never used")]
    UnusedSingleton(String),
    #[error(transparent)]
    Store(#[from] StoreError),
}

/// Inserts the primitive triples (and optionally the meta axiom) as base
/// triples. Returns how many were new.
pub fn install_vocabulary(
    store: &mut TripleStore,
    vocab: &SpVocabulary,
    include_meta_axiom: bool,
) -> Result<usize, StoreError> {
    let mut added = 0;
    for (s, p, o) in vocab.axioms(include_meta_axiom) {
        added += usize::from(store.insert_terms(s, p, o, Origin::Base)?);
    }
    Ok(added)
}

/// Replaces a data triple by its singleton graph.
///
/// Inserts `2 + meta.len()` base triples but never `data` itself. Repeated
/// metadata pairs collapse to one stored triple.
pub fn reify(
    store: &mut TripleStore,
    vocab: &SpVocabulary,
    data: Triple,
    meta: &[(TermId, TermId)],
    minter: &mut SingletonMinter,
) -> Result<SingletonDescriptor, SingletonError> {
    let generic = store
        .try_term(data.p)
        .ok_or(StoreError::UnknownTermId(data.p))?;
    let generic_iri = match generic {
        Term::Iri(iri) => iri.clone(),
        other => return Err(SingletonError::NonIriPredicate(other.to_ntriples())),
    };
    let sp_iri = minter.next_iri(&generic_iri);
    if let Some(existing) = store.lookup_iri(&sp_iri) {
        if store.is_used_as_predicate(existing) {
            return Err(SingletonError::MintCollision(sp_iri));
        }
    }
    let spof = store.intern(Term::iri(&vocab.singleton_property_of))?;
    let sp = store.intern(Term::Iri(sp_iri))?;
    let descriptor = SingletonDescriptor {
        sp,
        generic: data.p,
        subject: data.s,
        object: data.o,
        meta: meta.to_vec(),
    };
    let triples = descriptor.triples(spof);
    for t in &triples {
        store.validate(t)?;
    }
    for t in triples {
        store.insert(t, Origin::Base)?;
    }
    Ok(descriptor)
}

/// Reads the singleton graph of `sp` back into a descriptor.
///
/// Metadata excludes the `singletonPropertyOf` link, `rdf:type` triples and
/// anything the reasoner inferred, so extraction gives the same answer before
/// and after materialization. Pairs come back in term-id order.
pub fn extract(
    store: &TripleStore,
    vocab: &SpVocabulary,
    sp: TermId,
) -> Result<SingletonDescriptor, SingletonError> {
    let name = || {
        store
            .try_term(sp)
            .map_or_else(|| sp.to_string(), Term::to_ntriples)
    };
    let spof = store
        .lookup_iri(&vocab.singleton_property_of)
        .ok_or_else(|| SingletonError::NotASingleton(name()))?;
    let generics: Vec<TermId> = store
        .matching(Pattern::new(Some(sp), Some(spof), None))
        .map(|t| t.o)
        .collect();
    let generic = match generics.as_slice() {
        [] => return Err(SingletonError::NotASingleton(name())),
        [g] => *g,
        _ => {
            return Err(SingletonError::AmbiguousSingleton {
                sp: name(),
                reason: format!("declares {} generic properties", generics.len()),
            })
        }
    };
    let mut usages = store.matching(Pattern::new(None, Some(sp), None));
    let usage = usages.next().ok_or_else(|| SingletonError::UnusedSingleton(name()))?;
    if usages.next().is_some() {
        return Err(SingletonError::AmbiguousSingleton {
            sp: name(),
            reason: "used for more than one subject-object pair".into(),
        });
    }
    let rdf_type = store.lookup_iri(vocab::RDF_TYPE);
    let meta = store
        .matching(Pattern::new(Some(sp), None, None))
        .filter(|t| t.p != spof && Some(t.p) != rdf_type)
        .filter(|t| store.origin(t) == Some(Origin::Base))
        .map(|t| (t.p, t.o))
        .collect();
    Ok(SingletonDescriptor {
        sp,
        generic,
        subject: usage.s,
        object: usage.o,
        meta,
    })
}

/// Result of scanning a store for singleton properties.
#[derive(Debug, Clone, Default)]
pub struct SingletonScan {
    pub descriptors: Vec<SingletonDescriptor>,
    pub malformed: Vec<(TermId, SingletonError)>,
}

/// Extracts every property that has a `singletonPropertyOf` assertion.
pub fn enumerate_singletons(store: &TripleStore, vocab: &SpVocabulary) -> SingletonScan {
    let mut scan = SingletonScan::default();
    let Some(spof) = store.lookup_iri(&vocab.singleton_property_of) else {
        return scan;
    };
    let candidates: BTreeSet<TermId> = store
        .matching(Pattern::new(None, Some(spof), None))
        .map(|t| t.s)
        .collect();
    for sp in candidates {
        match extract(store, vocab, sp) {
            Ok(d) => scan.descriptors.push(d),
            Err(e) => scan.malformed.push((sp, e)),
        }
    }
    scan
}
