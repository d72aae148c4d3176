//! Forward-chaining materialization to fixpoint.
//!
//! [`materialize`] injects the ruleset's axioms, then applies the rules in
//! rounds until nothing new appears. Two strategies compute the same closure:
//!
//! * `Naive` re-joins every rule against the full store each round.
//! * `SemiNaive` seeds each premise position in turn with the previous
//!   round's delta and joins the remaining premises against the full store.
//!
//! Conclusions are committed once per round, so every round sees a stable
//! store. Rules never introduce new terms, so the fixpoint is finite; the
//! round and triple ceilings only catch configuration mistakes.

mod rules;
mod trace;

use std::collections::{BTreeSet, HashSet};

use thiserror::Error;

pub use rules::{
    apply_rule_once, iri, rdfs_rule, var, CompiledRule, Rule, RuleError, Ruleset, Slot,
    TripleTemplate, DEFAULT_RULES, MAX_RULE_VARS,
};
pub use trace::{explain, Derivation, ExplainError, Trace};

use crate::store::{Origin, StoreError, Triple, TripleStore};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    Naive,
    #[default]
    SemiNaive,
}

impl std::str::FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "naive" => Ok(Strategy::Naive),
            "seminaive" | "semi-naive" => Ok(Strategy::SemiNaive),
            other => Err(format!("unknown strategy {other:?} (expected naive or seminaive)")),
        }
    }
}

pub const DEFAULT_MAX_ROUNDS: usize = 10_000;
pub const DEFAULT_TRIPLE_FACTOR: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaterializeOptions {
    pub strategy: Strategy,
    pub trace: bool,
    pub max_rounds: usize,
    /// Ceiling on the total triple count. `None` means
    /// [`DEFAULT_TRIPLE_FACTOR`] times the size of the store once the axioms
    /// are in.
    pub max_triples: Option<usize>,
}

impl Default for MaterializeOptions {
    fn default() -> Self {
        MaterializeOptions {
            strategy: Strategy::SemiNaive,
            trace: false,
            max_rounds: DEFAULT_MAX_ROUNDS,
            max_triples: None,
        }
    }
}

impl MaterializeOptions {
    pub fn with_strategy(strategy: Strategy) -> Self {
        MaterializeOptions {
            strategy,
            ..Default::default()
        }
    }

    pub fn traced(mut self) -> Self {
        self.trace = true;
        self
    }

    pub fn unbounded(mut self) -> Self {
        self.max_rounds = usize::MAX;
        self.max_triples = Some(usize::MAX);
        self
    }
}

#[derive(Debug, Clone, Default)]
pub struct MaterializeReport {
    /// Triples added by the rules in this run.
    pub inferred_count: usize,
    /// Rule-application rounds, including the final one that found nothing.
    pub rounds: usize,
    /// Axioms that were not already present.
    pub axioms_added: usize,
    pub trace: Option<Trace>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReasonerError {
    #[error("resource limit: {what} (after {rounds} completed rounds, {inferred} triples inferred)")]
    ResourceLimit {
        what: String,
        rounds: usize,
        inferred: usize,
    },
    #[error(transparent)]
    Store(#[from] StoreError),
}

/// Computes the least fixpoint of `ruleset` over the store's triples plus
/// the ruleset axioms. Axioms are stored as base triples, derived triples as
/// inferred. On `ResourceLimit` the store holds the last completed round.
pub fn materialize(
    store: &mut TripleStore,
    ruleset: &Ruleset,
    options: &MaterializeOptions,
) -> Result<MaterializeReport, ReasonerError> {
    let mut report = MaterializeReport::default();
    for (s, p, o) in ruleset.axioms() {
        report.axioms_added += usize::from(store.insert_terms(s.clone(), p.clone(), o.clone(), Origin::Base)?);
    }
    let compiled = ruleset
        .rules()
        .iter()
        .map(|r| CompiledRule::compile(r, store))
        .collect::<Result<Vec<_>, _>>()?;
    let max_triples = options
        .max_triples
        .unwrap_or_else(|| store.len().saturating_mul(DEFAULT_TRIPLE_FACTOR));
    let mut trace = options.trace.then(Trace::default);

    // semi-naive starts from everything: its first round is a naive round
    let mut delta: Vec<Triple> = store.iter().collect();
    loop {
        if report.rounds >= options.max_rounds {
            return Err(ReasonerError::ResourceLimit {
                what: format!("round ceiling {} reached", options.max_rounds),
                rounds: report.rounds,
                inferred: report.inferred_count,
            });
        }
        let fresh = match options.strategy {
            Strategy::Naive => round(store, &compiled, None, trace.as_mut()),
            Strategy::SemiNaive => round(store, &compiled, Some(&delta), trace.as_mut()),
        };
        report.rounds += 1;
        if fresh.is_empty() {
            break;
        }
        if store.len().saturating_add(fresh.len()) > max_triples {
            return Err(ReasonerError::ResourceLimit {
                what: format!(
                    "triple ceiling {max_triples} would be exceeded ({} + {})",
                    store.len(),
                    fresh.len()
                ),
                rounds: report.rounds - 1,
                inferred: report.inferred_count,
            });
        }
        for t in &fresh {
            store.insert(*t, Origin::Inferred)?;
        }
        report.inferred_count += fresh.len();
        delta = fresh.into_iter().collect();
    }
    report.trace = trace;
    Ok(report)
}

/// One round: every new, well-formed conclusion, sorted.
fn round(
    store: &TripleStore,
    rules: &[CompiledRule],
    delta: Option<&[Triple]>,
    mut trace: Option<&mut Trace>,
) -> BTreeSet<Triple> {
    let mut fresh = BTreeSet::new();
    let mut rejected = HashSet::new();
    for rule in rules {
        let mut emit = |c: Triple, premises: &[Triple]| {
            if store.contains(&c) || rejected.contains(&c) {
                return;
            }
            if !store.is_well_formed(&c) {
                rejected.insert(c);
                return;
            }
            if fresh.insert(c) {
                if let Some(trace) = trace.as_deref_mut() {
                    trace.record(Derivation {
                        conclusion: c,
                        rule: rule.name().to_owned(),
                        premises: premises.to_vec(),
                    });
                }
            }
        };
        match delta {
            None => rule.for_each_match(store, None, &mut emit),
            Some(delta) => {
                for i in 0..rule.premise_count() {
                    rule.for_each_match(store, Some((i, delta)), &mut emit);
                }
            }
        }
    }
    fresh
}


#[cfg(test)]
mod temporal {
    use super::*;
    use crate::fixtures::{ex_triple, temporal_store};
    use crate::singleton::SpVocabulary;

    fn closed(strategy: Strategy) -> (TripleStore, MaterializeReport) {
        let mut store = temporal_store();
        let opts = MaterializeOptions::with_strategy(strategy).traced();
        let report = materialize(&mut store, &Ruleset::rdfs_default(&SpVocabulary::default()), &opts).unwrap();
        (store, report)
    }

    #[test]
    fn two_pass_and_memberof() {
        let (store, report) = closed(Strategy::SemiNaive);
        assert!(report.inferred_count > 0);
        for (s, p, o) in [
            ("worksFor#1", "rdfs:subPropertyOf", "worksFor"),
            ("ProfessorA", "worksFor", "University1"),
            ("ProfessorA", "memberOf", "University1"),
            ("ProfessorA", "worksFor", "University2"),
            ("ProfessorA", "memberOf", "University2"),
            ("StudentB", "hasAdvisor", "ProfessorA"),
            ("worksFor#1", "rdf:type", "rdf:SingletonProperty"),
            ("worksFor#2", "rdf:type", "rdf:SingletonProperty"),
            ("hasAdvisor#3", "rdf:type", "rdf:SingletonProperty"),
        ] {
            let t = ex_triple(&store, s, p, o).unwrap_or_else(|| panic!("{s} {p} {o} not interned"));
            assert_eq!(store.origin(&t), Some(Origin::Inferred), "{s} {p} {o}");
        }
    }

    #[test]
    fn explain_m0_is_two_rdfs7_steps() {
        let (store, report) = closed(Strategy::SemiNaive);
        let trace = report.trace.unwrap();
        let m0 = ex_triple(&store, "ProfessorA", "worksFor", "University1").unwrap();
        let chain = explain(&trace, &store, &m0).unwrap();
        let t0 = ex_triple(&store, "ProfessorA", "worksFor#1", "University1").unwrap();
        let t1 = ex_triple(&store, "worksFor#1", "rdf:singletonPropertyOf", "worksFor").unwrap();
        let t10 = ex_triple(&store, "worksFor#1", "rdfs:subPropertyOf", "worksFor").unwrap();
        let axiom = ex_triple(&store, "rdf:singletonPropertyOf", "rdfs:subPropertyOf", "rdfs:subPropertyOf").unwrap();
        assert_eq!(chain.len(), 2);
        assert_eq!((chain[0].rule.as_str(), chain[0].conclusion), ("rdfs7", t10));
        assert_eq!(chain[0].premises, vec![t1, axiom]);
        assert_eq!((chain[1].rule.as_str(), chain[1].conclusion), ("rdfs7", m0));
        assert_eq!(chain[1].premises, vec![t0, t10]);

        let m8 = ex_triple(&store, "ProfessorA", "memberOf", "University1").unwrap();
        let m7 = ex_triple(&store, "worksFor", "rdfs:subPropertyOf", "memberOf").unwrap();
        let chain = explain(&trace, &store, &m8).unwrap();
        let last = chain.last().unwrap();
        assert_eq!(last.rule, "rdfs7");
        assert_eq!(last.premises, vec![m0, m7]);

        assert!(matches!(explain(&trace, &store, &t0), Err(ExplainError::NotInferred(_))));
    }

    #[test]
    fn every_traced_step_replays() {
        for strategy in [Strategy::Naive, Strategy::SemiNaive] {
            let (mut store, report) = closed(strategy);
            let trace = report.trace.unwrap();
            assert_eq!(trace.len(), report.inferred_count);
            let rs = Ruleset::rdfs_default(&SpVocabulary::default());
            let compiled: Vec<_> = rs.rules().iter().map(|r| CompiledRule::compile(r, &mut store).unwrap()).collect();
            for d in trace.iter() {
                let rule = compiled.iter().find(|r| r.name() == d.rule).unwrap();
                assert_eq!(rule.conclude(&d.premises), Some(d.conclusion));
                assert!(d.premises.iter().all(|p| store.contains(p)));
            }
        }
    }

    #[test]
    fn strategies_agree() {
        let (naive, a) = closed(Strategy::Naive);
        let (semi, b) = closed(Strategy::SemiNaive);
        assert_eq!(naive.to_term_set(), semi.to_term_set());
        assert_eq!(a.inferred_count, b.inferred_count);
    }

    #[test]
    fn without_meta_axiom_no_data_triple() {
        let mut store = temporal_store();
        let rs = Ruleset::rdfs_without_meta_axiom(&SpVocabulary::default());
        materialize(&mut store, &rs, &MaterializeOptions::default()).unwrap();
        let m0 = ex_triple(&store, "ProfessorA", "worksFor", "University1");
        assert!(m0.is_none_or(|t| !store.contains(&t)));
    }
}
