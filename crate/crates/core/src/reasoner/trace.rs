//! First-derivation traces and proof extraction.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::store::{Triple, TripleStore};

/// One rule application: `premises` (in rule order) yield `conclusion`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub conclusion: Triple,
    pub rule: String,
    pub premises: Vec<Triple>,
}

impl Derivation {
    /// `conclusion ⇐ rule(premise1, premise2)`
    pub fn render(&self, store: &TripleStore) -> String {
        let premises: Vec<String> = self.premises.iter().map(|t| short(store, t)).collect();
        format!(
            "{} ⇐ {}({})",
            short(store, &self.conclusion),
            self.rule,
            premises.join(", ")
        )
    }
}

fn short(store: &TripleStore, t: &Triple) -> String {
    let (s, p, o) = store.resolve(t);
    format!("{s} {p} {o}")
}

/// The first derivation found for every inferred triple.
#[derive(Debug, Clone, Default)]
pub struct Trace {
    first: HashMap<Triple, Derivation>,
    order: Vec<Triple>,
}

impl Trace {
    pub(crate) fn record(&mut self, d: Derivation) {
        if !self.first.contains_key(&d.conclusion) {
            self.order.push(d.conclusion);
            self.first.insert(d.conclusion, d);
        }
    }

    pub fn get(&self, t: &Triple) -> Option<&Derivation> {
        self.first.get(t)
    }

    pub fn len(&self) -> usize {
        self.first.len()
    }

    pub fn is_empty(&self) -> bool {
        self.first.is_empty()
    }

    /// Derivations in the order they were found.
    pub fn iter(&self) -> impl Iterator<Item = &Derivation> {
        self.order.iter().map(|t| &self.first[t])
    }

    /// One line per derivation.
    pub fn render(&self, store: &TripleStore) -> String {
        let mut out = String::new();
        for d in self.iter() {
            out.push_str(&d.render(store));
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExplainError {
    #[error("{0} was not inferred (base triple, axiom, or absent)")]
    NotInferred(String),
}

/// A proof of `triple`: derivations ordered so that every inferred premise
/// is justified before it is used, ending with `triple`'s own derivation.
pub fn explain(trace: &Trace, store: &TripleStore, triple: &Triple) -> Result<Vec<Derivation>, ExplainError> {
    if trace.get(triple).is_none() {
        let name = if store.contains(triple) {
            store.format_triple(triple)
        } else {
            format!("{triple:?}")
        };
        return Err(ExplainError::NotInferred(name));
    }
    let mut out = Vec::new();
    let mut done = HashSet::new();
    // iterative post-order; first derivations only cite older triples, so
    // there are no cycles
    let mut stack = vec![(*triple, false)];
    while let Some((t, expanded)) = stack.pop() {
        if done.contains(&t) {
            continue;
        }
        let Some(d) = trace.get(&t) else { continue };
        if expanded {
            done.insert(t);
            out.push(d.clone());
        } else {
            stack.push((t, true));
            for p in d.premises.iter().rev() {
                if !done.contains(p) {
                    stack.push((*p, false));
                }
            }
        }
    }
    Ok(out)
}
