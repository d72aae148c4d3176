//! Reference implementations used as test oracles. Nothing here calls the
//! reasoner or the query engine.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use rand::seq::IndexedRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use sprdf::query::{PatternTerm, Query};
use sprdf::store::TripleStore;
use sprdf::term::Term;

pub type StrTriple = (String, String, String);

pub const TYPE: &str = "<http://www.w3.org/1999/02/22-rdf-syntax-ns#type>";
pub const PROPERTY: &str = "<http://www.w3.org/1999/02/22-rdf-syntax-ns#Property>";
pub const RESOURCE: &str = "<http://www.w3.org/1999/02/22-rdf-syntax-ns#Resource>";
pub const SP_OF: &str = "<http://www.w3.org/1999/02/22-rdf-syntax-ns#singletonPropertyOf>";
pub const SP_CLASS: &str = "<http://www.w3.org/1999/02/22-rdf-syntax-ns#SingletonProperty>";
pub const CLASS: &str = "<http://www.w3.org/2000/01/rdf-schema#Class>";
pub const DOMAIN: &str = "<http://www.w3.org/2000/01/rdf-schema#domain>";
pub const RANGE: &str = "<http://www.w3.org/2000/01/rdf-schema#range>";
pub const SUB_CLASS: &str = "<http://www.w3.org/2000/01/rdf-schema#subClassOf>";
pub const SUB_PROP: &str = "<http://www.w3.org/2000/01/rdf-schema#subPropertyOf>";

fn st(s: &str, p: &str, o: &str) -> StrTriple {
    (s.to_owned(), p.to_owned(), o.to_owned())
}

/// The singleton vocabulary, spelled out by hand.
pub fn sp_axioms(meta_axiom: bool) -> Vec<StrTriple> {
    let mut v = vec![
        st(SP_OF, TYPE, PROPERTY),
        st(SP_OF, TYPE, RESOURCE),
        st(SP_OF, DOMAIN, SP_CLASS),
        st(SP_OF, RANGE, PROPERTY),
        st(SP_CLASS, TYPE, CLASS),
        st(SP_CLASS, SUB_CLASS, PROPERTY),
    ];
    if meta_axiom {
        v.push(st(SP_OF, SUB_PROP, SUB_PROP));
    }
    v
}

pub fn strings(store: &TripleStore) -> BTreeSet<StrTriple> {
    store
        .to_term_set()
        .into_iter()
        .map(|(s, p, o)| (s.to_ntriples(), p.to_ntriples(), o.to_ntriples()))
        .collect()
}

fn well_formed(t: &StrTriple) -> bool {
    !t.0.starts_with('"') && t.1.starts_with('<')
}

/// Brute-force RDFS closure (rules 2, 3, 5, 7, 9, 11) over N-Triples-rendered
/// terms: every ordered pair of triples is tried every round.
pub fn oracle_closure(base: &BTreeSet<StrTriple>, meta_axiom: bool) -> BTreeSet<StrTriple> {
    let mut all = base.clone();
    all.extend(sp_axioms(meta_axiom));
    loop {
        let snapshot: Vec<StrTriple> = all.iter().cloned().collect();
        let mut fresh = Vec::new();
        for a in &snapshot {
            for b in &snapshot {
                // a: (x p y) or schema premise, b: schema triple
                if b.1 == DOMAIN && a.1 == b.0 {
                    fresh.push(st(&a.0, TYPE, &b.2));
                }
                if b.1 == RANGE && a.1 == b.0 {
                    fresh.push(st(&a.2, TYPE, &b.2));
                }
                if a.1 == SUB_PROP && b.1 == SUB_PROP && a.2 == b.0 {
                    fresh.push(st(&a.0, SUB_PROP, &b.2));
                }
                if b.1 == SUB_PROP && a.1 == b.0 {
                    fresh.push(st(&a.0, &b.2, &a.2));
                }
                if a.1 == TYPE && b.1 == SUB_CLASS && a.2 == b.0 {
                    fresh.push(st(&a.0, TYPE, &b.2));
                }
                if a.1 == SUB_CLASS && b.1 == SUB_CLASS && a.2 == b.0 {
                    fresh.push(st(&a.0, SUB_CLASS, &b.2));
                }
            }
        }
        let before = all.len();
        all.extend(fresh.into_iter().filter(well_formed));
        if all.len() == before {
            return all;
        }
    }
}

/// Nested-loop BGP evaluation in textual pattern order over the set of
/// `triples`. Rows are sorted; DISTINCT removes adjacent duplicates.
pub fn brute_force_bgp(query: &Query, triples: &[(Term, Term, Term)]) -> Vec<Vec<Term>> {
    let triples: BTreeSet<&(Term, Term, Term)> = triples.iter().collect();
    let mut solutions: Vec<HashMap<&str, &Term>> = vec![HashMap::new()];
    for tp in &query.bgp {
        let mut next = Vec::new();
        for sol in &solutions {
            'triples: for (s, p, o) in &triples {
                let mut ext = sol.clone();
                for (pt, term) in [(&tp.s, s), (&tp.p, p), (&tp.o, o)] {
                    match pt {
                        PatternTerm::Const(c) if c != term => continue 'triples,
                        PatternTerm::Const(_) => {}
                        PatternTerm::Var(v) => match ext.get(v.as_str()) {
                            Some(bound) if *bound != term => continue 'triples,
                            Some(_) => {}
                            None => {
                                ext.insert(v.as_str(), term);
                            }
                        },
                    }
                }
                next.push(ext);
            }
        }
        solutions = next;
    }
    let vars = query.projected();
    let mut rows: Vec<Vec<Term>> = solutions
        .iter()
        .map(|sol| vars.iter().map(|v| sol[v.as_str()].clone()).collect())
        .collect();
    rows.sort();
    if query.distinct {
        rows.dedup();
    }
    rows
}

pub fn iri(local: &str) -> Term {
    Term::iri(format!("http://example.org/{local}"))
}

/// A random graph mixing RDFS schema triples, data triples and
/// singleton-property graphs. `width` classes, properties and nodes; keep it
/// small so rules fire often.
pub fn random_rdfs_graph(rng: &mut ChaCha8Rng, size: usize, width: usize) -> Vec<(Term, Term, Term)> {
    let rdfs = |l: &str| Term::iri(format!("http://www.w3.org/2000/01/rdf-schema#{l}"));
    let rdf = |l: &str| Term::iri(format!("http://www.w3.org/1999/02/22-rdf-syntax-ns#{l}"));
    let classes: Vec<Term> = (0..width).map(|i| iri(&format!("C{i}"))).collect();
    let props: Vec<Term> = (0..width).map(|i| iri(&format!("p{i}"))).collect();
    let nodes: Vec<Term> = (0..width + 1)
        .map(|i| iri(&format!("n{i}")))
        .chain([Term::blank("b0"), Term::literal("v")])
        .collect();
    let subjects = width + 2;
    let mut out = Vec::with_capacity(size);
    let mut minted = 0;
    while out.len() < size {
        let pick = |rng: &mut ChaCha8Rng, v: &[Term]| v.choose(rng).unwrap().clone();
        match rng.random_range(0..8) {
            0 => out.push((pick(rng, &classes), rdfs("subClassOf"), pick(rng, &classes))),
            1 => out.push((pick(rng, &props), rdfs("subPropertyOf"), pick(rng, &props))),
            2 => out.push((pick(rng, &props), rdfs("domain"), pick(rng, &classes))),
            3 => out.push((pick(rng, &props), rdfs("range"), pick(rng, &classes))),
            4 => out.push((pick(rng, &nodes[..subjects]), rdf("type"), pick(rng, &classes))),
            5 => {
                minted += 1;
                let generic = pick(rng, &props);
                let sp = Term::iri(format!("{}#{minted}", generic.as_iri().unwrap()));
                out.push((sp.clone(), rdf("singletonPropertyOf"), generic));
                out.push((pick(rng, &nodes[..subjects]), sp.clone(), pick(rng, &nodes)));
                out.push((sp, iri("from"), Term::literal(rng.random_range(1990..2000).to_string())));
            }
            _ => out.push((pick(rng, &nodes[..subjects]), pick(rng, &props), pick(rng, &nodes))),
        }
    }
    out.truncate(size);
    out
}

pub fn store_of(triples: &[(Term, Term, Term)]) -> TripleStore {
    let mut store = TripleStore::new();
    for (s, p, o) in triples {
        store
            .insert_terms(s.clone(), p.clone(), o.clone(), sprdf::store::Origin::Base)
            .unwrap();
    }
    store
}

pub fn string_set(triples: &[(Term, Term, Term)]) -> BTreeSet<StrTriple> {
    triples
        .iter()
        .map(|(s, p, o)| (s.to_ntriples(), p.to_ntriples(), o.to_ntriples()))
        .collect()
}

/// A random BGP over the vocabulary of [`random_data`], as query text.
pub fn random_bgp_text(rng: &mut ChaCha8Rng) -> String {
    let vars = ["?a", "?b", "?c", "?d"];
    let subjects = ["ex:n0", "ex:n1", "ex:n2", "ex:missing", "_:x"];
    let preds = ["ex:p0", "ex:p1", "ex:p2", "a"];
    let objects = ["ex:n0", "ex:n1", "ex:n3", "\"1\"", "\"x\"@en", "ex:C0"];
    let slot = |rng: &mut ChaCha8Rng, consts: &[&str]| -> String {
        if rng.random_bool(0.6) {
            vars[rng.random_range(0..vars.len())].to_owned()
        } else {
            consts[rng.random_range(0..consts.len())].to_owned()
        }
    };
    let n = rng.random_range(1..=3);
    let mut body = Vec::new();
    for _ in 0..n {
        body.push(format!(
            "{} {} {}",
            slot(rng, &subjects),
            slot(rng, &preds),
            slot(rng, &objects)
        ));
    }
    let distinct = if rng.random_bool(0.3) { "DISTINCT " } else { "" };
    format!("PREFIX ex: <http://example.org/>\nSELECT {distinct}* WHERE {{ {} }}", body.join(" . "))
}

/// Data for [`random_bgp_text`].
pub fn random_data(rng: &mut ChaCha8Rng, size: usize) -> Vec<(Term, Term, Term)> {
    let rdf_type = Term::iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type");
    let subjects: Vec<Term> = (0..4).map(|i| iri(&format!("n{i}"))).chain([Term::blank("x")]).collect();
    let preds: Vec<Term> = (0..3).map(|i| iri(&format!("p{i}"))).chain([rdf_type]).collect();
    let objects: Vec<Term> = subjects
        .iter()
        .cloned()
        .chain([Term::literal("1"), Term::lang_literal("x", "en"), iri("C0"), iri("C1")])
        .collect();
    (0..size)
        .map(|_| {
            (
                subjects.choose(rng).unwrap().clone(),
                preds.choose(rng).unwrap().clone(),
                objects.choose(rng).unwrap().clone(),
            )
        })
        .collect()
}
