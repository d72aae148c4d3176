//! Parses a messy document, reports the bad lines, and shows that the
//! canonical output re-parses to the same store.

use sprdf::ntriples::{parse_ntriples, write_ntriples, OriginFilter};
use sprdf::store::TripleStore;

const INPUT: &str = r#"# comment
<http://example.org/b> <http://example.org/p> "tab\there" .
<http://example.org/a> <http://example.org/p> "é"@fr .
<http://example.org/a> <http://example.org/p> "é"@fr .
_:x <http://example.org/q> "42"^^<http://www.w3.org/2001/XMLSchema#integer> .
<http://example.org/a> "literal predicate" <http://example.org/c> .
<http://example.org/a> <http://example.org/p> <unterminated .
"#;

fn main() {
    let mut store = TripleStore::new();
    let outcome = parse_ntriples(INPUT, &mut store);
    for d in &outcome.diagnostics {
        println!("{d}");
    }
    let canonical = write_ntriples(&store, OriginFilter::All);
    println!("\n{canonical}");

    let mut again = TripleStore::new();
    assert!(!parse_ntriples(&canonical, &mut again).has_errors());
    assert_eq!(again.to_term_set(), store.to_term_set());
    assert_eq!(write_ntriples(&again, OriginFilter::All), canonical);
    println!("round trip ok ({} triples)", store.len());
}
