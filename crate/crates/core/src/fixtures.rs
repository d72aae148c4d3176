//! The temporal university example, bundled for tests, examples and the CLI.
//!
//! Local names are expanded under [`EX`]; temporal values are plain literals.

use crate::ntriples::parse_ntriples;
use crate::store::{Triple, TripleStore};
use crate::term::Term;

pub const EX: &str = "http://example.org/";

/// Singleton-property encoding: three singletons, their `from`/`to` values,
/// and `worksFor rdfs:subPropertyOf memberOf`. No data triples.
pub const TEMPORAL_SP_NT: &str = include_str!("../data/temporal_sp.nt");

/// The same facts as ordinary data triples.
pub const TEMPORAL_PLAIN_NT: &str = include_str!("../data/temporal_plain.nt");

/// Which universities does ProfessorA work for?
pub const UNIVERSITY_QUERY: &str = include_str!("../queries/example_university.rq");

/// Professors at University2 with an advisee since 2009 (`ex:from`).
pub const MIXED_QUERY: &str = include_str!("../queries/example_mixed.rq");

pub fn ex(local: &str) -> Term {
    Term::iri(format!("{EX}{local}"))
}

/// Parses `text` into a fresh store, panicking on any diagnostic error.
pub fn load(text: &str) -> TripleStore {
    let mut store = TripleStore::new();
    let outcome = parse_ntriples(text, &mut store);
    if let Some(e) = outcome.errors().next() {
        panic!("bundled fixture does not parse: {e}");
    }
    store
}

pub fn temporal_store() -> TripleStore {
    load(TEMPORAL_SP_NT)
}

/// Looks up a triple of `ex:` local names (`rdf:`/`rdfs:` prefixes allowed).
/// `None` if any term was never interned.
pub fn ex_triple(store: &TripleStore, s: &str, p: &str, o: &str) -> Option<Triple> {
    let id = |name: &str| store.lookup(&expand(name));
    Some(Triple::new(id(s)?, id(p)?, id(o)?))
}

fn expand(name: &str) -> Term {
    use crate::vocab::{RDFS_NS, RDF_NS};
    if let Some(rest) = name.strip_prefix("rdf:") {
        Term::iri(format!("{RDF_NS}{rest}"))
    } else if let Some(rest) = name.strip_prefix("rdfs:") {
        Term::iri(format!("{RDFS_NS}{rest}"))
    } else if let Some(lit) = name.strip_prefix('"').and_then(|n| n.strip_suffix('"')) {
        Term::literal(lit)
    } else {
        ex(name)
    }
}
