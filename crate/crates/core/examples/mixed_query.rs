//! Runs the two example queries before and after materialization. The
//! university query finds nothing until the reasoner recovers the data
//! triples; the mixed query joins data with singleton metadata.

use sprdf::fixtures::{temporal_store, MIXED_QUERY, UNIVERSITY_QUERY};
use sprdf::query::{evaluate, parse_query, plan, to_tsv};
use sprdf::reasoner::{materialize, MaterializeOptions, Ruleset};
use sprdf::singleton::SpVocabulary;

fn main() {
    let mut store = temporal_store();
    let university = parse_query(UNIVERSITY_QUERY).unwrap();
    let mixed = parse_query(MIXED_QUERY).unwrap();

    println!("before: {} universities", evaluate(&university, &store).len());
    materialize(&mut store, &Ruleset::rdfs_default(&SpVocabulary::default()), &MaterializeOptions::default()).unwrap();

    for (name, q) in [("university", &university), ("mixed", &mixed)] {
        println!("\n-- {name}");
        print!("{}", plan(q, &store).render(q));
        print!("{}", to_tsv(&evaluate(q, &store), &store));
    }
}
