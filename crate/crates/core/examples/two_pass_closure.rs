//! Materializes the temporal university example and prints what the two
//! passes add: the data triples behind each singleton, then `memberOf`.

use sprdf::fixtures::{ex_triple, temporal_store};
use sprdf::ntriples::{write_ntriples, OriginFilter};
use sprdf::reasoner::{explain, materialize, MaterializeOptions, Ruleset};
use sprdf::singleton::SpVocabulary;

fn main() {
    let mut store = temporal_store();
    println!("loaded {} triples", store.len());

    let ruleset = Ruleset::rdfs_default(&SpVocabulary::default());
    let report = materialize(&mut store, &ruleset, &MaterializeOptions::default().traced())
        .expect("closure fits in the default limits");
    println!(
        "{} inferred over {} rounds, {} axioms added\n",
        report.inferred_count, report.rounds, report.axioms_added
    );
    print!("{}", write_ntriples(&store, OriginFilter::Inferred));

    let trace = report.trace.unwrap();
    let goal = ex_triple(&store, "ProfessorA", "memberOf", "University1").unwrap();
    println!("\nwhy {}:", store.format_triple(&goal));
    for step in explain(&trace, &store, &goal).unwrap() {
        println!("  {}", step.render(&store));
    }
}
