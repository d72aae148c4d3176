//! Builds rulesets by hand. Without the singletonPropertyOf axiom, or without
//! rdfs7, no data triple is ever recovered from the singleton graph. A custom
//! symmetric rule shows the rule API.

use sprdf::fixtures::{ex_triple, temporal_store, EX};
use sprdf::reasoner::{iri, materialize, rdfs_rule, var, MaterializeOptions, Rule, Ruleset, TripleTemplate};
use sprdf::singleton::SpVocabulary;

fn main() {
    let vocab = SpVocabulary::default();
    let colleague = format!("{EX}colleagueOf");
    let symmetric = Rule::new(
        "colleague-sym",
        vec![TripleTemplate::new(var("x"), iri(&colleague), var("y"))],
        TripleTemplate::new(var("y"), iri(&colleague), var("x")),
    )
    .unwrap();

    let variants = [
        ("default", Ruleset::rdfs_default(&vocab)),
        ("no meta axiom", Ruleset::rdfs_without_meta_axiom(&vocab)),
        (
            "no rdfs7",
            Ruleset::new(
                ["rdfs2", "rdfs3", "rdfs5", "rdfs9", "rdfs11"].map(|n| rdfs_rule(n).unwrap()).to_vec(),
                vocab.axioms(true),
            )
            .unwrap(),
        ),
        (
            "rdfs7 + custom",
            Ruleset::new(vec![rdfs_rule("rdfs7").unwrap(), symmetric], vocab.axioms(true)).unwrap(),
        ),
    ];
    for (name, ruleset) in variants {
        let mut store = temporal_store();
        let report = materialize(&mut store, &ruleset, &MaterializeOptions::default()).unwrap();
        let recovered = ex_triple(&store, "ProfessorA", "worksFor", "University1").is_some_and(|t| store.contains(&t));
        println!("{name:>15}: {:>3} inferred, data triple recovered: {recovered}", report.inferred_count);
    }
}
