//! Turns a data triple into a singleton property with two metadata values
//! and reads it back.

use sprdf::singleton::{extract, install_vocabulary, reify, SingletonMinter, SpVocabulary};
use sprdf::store::{Triple, TripleStore};
use sprdf::term::Term;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let vocab = SpVocabulary::default();
    let mut store = TripleStore::new();
    install_vocabulary(&mut store, &vocab, true)?;

    let mut id = |t: Term| store.intern(t);
    let bob = id(Term::iri("http://example.org/Bob"))?;
    let works_for = id(Term::iri("http://example.org/worksFor"))?;
    let acme = id(Term::iri("http://example.org/Acme"))?;
    let from = id(Term::iri("http://example.org/from"))?;
    let to = id(Term::iri("http://example.org/to"))?;
    let y2001 = id(Term::typed_literal("2001", "http://www.w3.org/2001/XMLSchema#gYear"))?;
    let y2008 = id(Term::typed_literal("2008", "http://www.w3.org/2001/XMLSchema#gYear"))?;

    let before = store.len();
    let mut minter = SingletonMinter::new(1);
    let data = Triple::new(bob, works_for, acme);
    let d = reify(&mut store, &vocab, data, &[(from, y2001), (to, y2008)], &mut minter)?;
    println!("reify added {} triples; data triple stored: {}", store.len() - before, store.contains(&data));
    let spof = store.lookup_iri(&vocab.singleton_property_of).unwrap();
    for t in d.triples(spof) {
        println!("  {}", store.format_triple(&t));
    }

    let back = extract(&store, &vocab, d.sp)?;
    assert_eq!(back.data_triple(), data);
    println!("extracted {} with {} metadata pairs", store.format_triple(&back.data_triple()), back.meta.len());
    Ok(())
}
