//! Rule templates, the shipped RDFS rules, and rule compilation.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use thiserror::Error;

use crate::singleton::SpVocabulary;
use crate::store::{Pattern, StoreError, TermId, Triple, TripleStore};
use crate::term::Term;
use crate::vocab;

/// Maximum number of distinct variables in one rule.
pub const MAX_RULE_VARS: usize = 8;

/// Names of the shipped rules, in evaluation order.
pub const DEFAULT_RULES: [&str; 6] = ["rdfs2", "rdfs3", "rdfs5", "rdfs7", "rdfs9", "rdfs11"];

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Slot {
    Var(String),
    Const(Term),
}

pub fn var(name: &str) -> Slot {
    Slot::Var(name.to_owned())
}

pub fn iri(value: &str) -> Slot {
    Slot::Const(Term::iri(value))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TripleTemplate {
    pub s: Slot,
    pub p: Slot,
    pub o: Slot,
}

impl TripleTemplate {
    pub fn new(s: Slot, p: Slot, o: Slot) -> Self {
        TripleTemplate { s, p, o }
    }

    fn slots(&self) -> [&Slot; 3] {
        [&self.s, &self.p, &self.o]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("rule {rule}: conclusion variable ?{var} does not occur in any premise")]
    UnboundConclusionVar { rule: String, var: String },
    #[error("rule {0} has no premises")]
    NoPremises(String),
    #[error("rule {rule} uses more than {MAX_RULE_VARS} variables")]
    TooManyVars { rule: String },
    #[error("duplicate rule name {0}")]
    DuplicateName(String),
    #[error("unknown rule {0}; known rules: rdfs2, rdfs3, rdfs5, rdfs7, rdfs9, rdfs11")]
    UnknownRule(String),
}

/// Premises ⇒ conclusion over triple templates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    name: String,
    premises: Vec<TripleTemplate>,
    conclusion: TripleTemplate,
}

impl Rule {
    pub fn new(
        name: impl Into<String>,
        premises: Vec<TripleTemplate>,
        conclusion: TripleTemplate,
    ) -> Result<Self, RuleError> {
        let name = name.into();
        if premises.is_empty() {
            return Err(RuleError::NoPremises(name));
        }
        let bound: HashSet<&str> = premises
            .iter()
            .flat_map(|t| t.slots())
            .filter_map(|s| match s {
                Slot::Var(v) => Some(v.as_str()),
                Slot::Const(_) => None,
            })
            .collect();
        if bound.len() > MAX_RULE_VARS {
            return Err(RuleError::TooManyVars { rule: name });
        }
        for slot in conclusion.slots() {
            if let Slot::Var(v) = slot {
                if !bound.contains(v.as_str()) {
                    return Err(RuleError::UnboundConclusionVar {
                        rule: name,
                        var: v.clone(),
                    });
                }
            }
        }
        Ok(Rule {
            name,
            premises,
            conclusion,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn premises(&self) -> &[TripleTemplate] {
        &self.premises
    }

    pub fn conclusion(&self) -> &TripleTemplate {
        &self.conclusion
    }
}

/// One of the shipped RDFS rules by name.
pub fn rdfs_rule(name: &str) -> Option<Rule> {
    use vocab::*;
    let t = TripleTemplate::new;
    let (premises, conclusion) = match name {
        "rdfs2" => (
            vec![t(var("x"), var("p"), var("y")), t(var("p"), iri(RDFS_DOMAIN), var("c"))],
            t(var("x"), iri(RDF_TYPE), var("c")),
        ),
        "rdfs3" => (
            vec![t(var("x"), var("p"), var("y")), t(var("p"), iri(RDFS_RANGE), var("c"))],
            t(var("y"), iri(RDF_TYPE), var("c")),
        ),
        "rdfs5" => (
            vec![
                t(var("p"), iri(RDFS_SUB_PROPERTY_OF), var("q")),
                t(var("q"), iri(RDFS_SUB_PROPERTY_OF), var("r")),
            ],
            t(var("p"), iri(RDFS_SUB_PROPERTY_OF), var("r")),
        ),
        "rdfs7" => (
            vec![
                t(var("x"), var("p"), var("y")),
                t(var("p"), iri(RDFS_SUB_PROPERTY_OF), var("q")),
            ],
            t(var("x"), var("q"), var("y")),
        ),
        "rdfs9" => (
            vec![
                t(var("x"), iri(RDF_TYPE), var("c")),
                t(var("c"), iri(RDFS_SUB_CLASS_OF), var("d")),
            ],
            t(var("x"), iri(RDF_TYPE), var("d")),
        ),
        "rdfs11" => (
            vec![
                t(var("c"), iri(RDFS_SUB_CLASS_OF), var("d")),
                t(var("d"), iri(RDFS_SUB_CLASS_OF), var("e")),
            ],
            t(var("c"), iri(RDFS_SUB_CLASS_OF), var("e")),
        ),
        _ => return None,
    };
    Some(Rule::new(name, premises, conclusion).expect("shipped rules are well-formed"))
}

/// Ordered rules plus ground axioms injected before evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ruleset {
    rules: Vec<Rule>,
    axioms: Vec<(Term, Term, Term)>,
}

impl Ruleset {
    pub fn new(rules: Vec<Rule>, axioms: Vec<(Term, Term, Term)>) -> Result<Self, RuleError> {
        let mut names = HashSet::new();
        for r in &rules {
            if !names.insert(r.name.as_str()) {
                return Err(RuleError::DuplicateName(r.name.clone()));
            }
        }
        Ok(Ruleset { rules, axioms })
    }

    /// rdfs2, rdfs3, rdfs5, rdfs7, rdfs9 and rdfs11 with the singleton
    /// vocabulary and meta axiom as axioms.
    pub fn rdfs_default(vocab: &SpVocabulary) -> Self {
        Ruleset::select(&DEFAULT_RULES, vocab, true).expect("default rules exist")
    }

    /// The default rules with only the six primitive vocabulary triples.
    pub fn rdfs_without_meta_axiom(vocab: &SpVocabulary) -> Self {
        Ruleset::select(&DEFAULT_RULES, vocab, false).expect("default rules exist")
    }

    /// Builds a ruleset from shipped rule names.
    pub fn select<S: AsRef<str>>(
        names: &[S],
        vocab: &SpVocabulary,
        include_meta_axiom: bool,
    ) -> Result<Self, RuleError> {
        let rules = names
            .iter()
            .map(|n| rdfs_rule(n.as_ref()).ok_or_else(|| RuleError::UnknownRule(n.as_ref().to_owned())))
            .collect::<Result<Vec<_>, _>>()?;
        Ruleset::new(rules, vocab.axioms(include_meta_axiom))
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn axioms(&self) -> &[(Term, Term, Term)] {
        &self.axioms
    }

    pub fn rule(&self, name: &str) -> Option<&Rule> {
        self.rules.iter().find(|r| r.name == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum CSlot {
    Var(usize),
    Const(TermId),
}

pub(crate) type Bindings = [Option<TermId>; MAX_RULE_VARS];

/// A rule with its constants resolved against one store.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompiledRule {
    name: String,
    premises: Vec<[CSlot; 3]>,
    conclusion: [CSlot; 3],
}

impl CompiledRule {
    /// Interns the rule's constants into `store`. Only the dictionary grows.
    pub fn compile(rule: &Rule, store: &mut TripleStore) -> Result<Self, StoreError> {
        let mut vars: Vec<String> = Vec::new();
        let mut slot = |s: &Slot, store: &mut TripleStore| -> Result<CSlot, StoreError> {
            Ok(match s {
                Slot::Const(t) => CSlot::Const(store.intern(t.clone())?),
                Slot::Var(v) => {
                    let idx = match vars.iter().position(|x| x == v) {
                        Some(i) => i,
                        None => {
                            vars.push(v.clone());
                            vars.len() - 1
                        }
                    };
                    CSlot::Var(idx)
                }
            })
        };
        let mut compile_template = |t: &TripleTemplate, store: &mut TripleStore| -> Result<[CSlot; 3], StoreError> {
            Ok([slot(&t.s, store)?, slot(&t.p, store)?, slot(&t.o, store)?])
        };
        let premises = rule
            .premises
            .iter()
            .map(|t| compile_template(t, store))
            .collect::<Result<Vec<_>, _>>()?;
        let conclusion = compile_template(&rule.conclusion, store)?;
        Ok(CompiledRule {
            name: rule.name.clone(),
            premises,
            conclusion,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn premise_count(&self) -> usize {
        self.premises.len()
    }

    /// Re-applies the rule to concrete premises (in rule order) and returns
    /// the conclusion if they unify.
    pub fn conclude(&self, premises: &[Triple]) -> Option<Triple> {
        if premises.len() != self.premises.len() {
            return None;
        }
        let mut b: Bindings = [None; MAX_RULE_VARS];
        for (tpl, t) in self.premises.iter().zip(premises) {
            if !unify(tpl, t, &mut b) {
                return None;
            }
        }
        instantiate(&self.conclusion, &b)
    }

    /// Enumerates every instantiation. With `seed = Some((i, triples))`,
    /// premise `i` ranges over `triples` and only the other premises are
    /// matched against the store.
    pub(crate) fn for_each_match(
        &self,
        store: &TripleStore,
        seed: Option<(usize, &[Triple])>,
        emit: &mut dyn FnMut(Triple, &[Triple]),
    ) {
        let n = self.premises.len();
        let mut matched = vec![Triple::new(TermId::MIN, TermId::MIN, TermId::MIN); n];
        match seed {
            None => {
                let order: Vec<usize> = (0..n).collect();
                self.join(store, &order, 0, [None; MAX_RULE_VARS], &mut matched, emit);
            }
            Some((i, triples)) => {
                let order: Vec<usize> = (0..n).filter(|&j| j != i).collect();
                for t in triples {
                    let mut b = [None; MAX_RULE_VARS];
                    if unify(&self.premises[i], t, &mut b) {
                        matched[i] = *t;
                        self.join(store, &order, 0, b, &mut matched, emit);
                    }
                }
            }
        }
    }

    fn join(
        &self,
        store: &TripleStore,
        order: &[usize],
        depth: usize,
        bindings: Bindings,
        matched: &mut Vec<Triple>,
        emit: &mut dyn FnMut(Triple, &[Triple]),
    ) {
        let Some(&premise) = order.get(depth) else {
            if let Some(c) = instantiate(&self.conclusion, &bindings) {
                emit(c, matched);
            }
            return;
        };
        let tpl = &self.premises[premise];
        let resolve = |s: CSlot| match s {
            CSlot::Const(id) => Some(id),
            CSlot::Var(v) => bindings[v],
        };
        let pattern = Pattern::new(resolve(tpl[0]), resolve(tpl[1]), resolve(tpl[2]));
        for t in store.matching(pattern) {
            let mut b = bindings;
            if unify(tpl, &t, &mut b) {
                matched[premise] = t;
                self.join(store, order, depth + 1, b, matched, emit);
            }
        }
    }
}

impl fmt::Display for CompiledRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

fn unify(tpl: &[CSlot; 3], t: &Triple, b: &mut Bindings) -> bool {
    for (slot, value) in tpl.iter().zip([t.s, t.p, t.o]) {
        match *slot {
            CSlot::Const(c) if c != value => return false,
            CSlot::Const(_) => {}
            CSlot::Var(v) => match b[v] {
                Some(bound) if bound != value => return false,
                Some(_) => {}
                None => b[v] = Some(value),
            },
        }
    }
    true
}

fn instantiate(tpl: &[CSlot; 3], b: &Bindings) -> Option<Triple> {
    let get = |s: CSlot| match s {
        CSlot::Const(id) => Some(id),
        CSlot::Var(v) => b[v],
    };
    Some(Triple::new(get(tpl[0])?, get(tpl[1])?, get(tpl[2])?))
}

/// Every well-formed conclusion of `rule` over `store` that is not yet
/// stored. The store is not modified.
pub fn apply_rule_once(store: &TripleStore, rule: &CompiledRule) -> BTreeSet<Triple> {
    let mut out = BTreeSet::new();
    rule.for_each_match(store, None, &mut |c, _| {
        if !store.contains(&c) && store.is_well_formed(&c) {
            out.insert(c);
        }
    });
    out
}
