use std::cmp::Ordering;
use std::collections::HashSet;
use std::time::{Duration, Instant};

use thiserror::Error;

use super::{PatternTerm, Query};
use crate::store::{IndexKind, Pattern, TermId, TripleStore};
use crate::term::Term;

/// Each position of a pattern already fixed by an earlier step divides the
/// estimate by this.
const BOUND_SELECTIVITY: usize = 16;

/// Triples visited between wall-clock checks.
const BUDGET_CHECK_INTERVAL: u32 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    Const(TermId),
    Var(usize),
    /// A constant the store has never seen: the pattern cannot match.
    Absent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlanStep {
    /// Position of the pattern in the query text.
    pub pattern: usize,
    pub index: IndexKind,
    pub estimate: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plan {
    pub steps: Vec<PlanStep>,
    /// Some constant is not in the store, so the result is empty.
    pub unsatisfiable: bool,
}

impl Plan {
    pub fn render(&self, query: &Query) -> String {
        let mut out = String::new();
        if self.unsatisfiable {
            out.push_str("(unsatisfiable: a constant is absent from the store)\n");
        }
        for (i, step) in self.steps.iter().enumerate() {
            out.push_str(&format!(
                "{}. [{}] ~{} {}\n",
                i + 1,
                step.index,
                step.estimate,
                query.bgp[step.pattern]
            ));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("query exceeded its {budget:?} budget after {rows} rows")]
pub struct Timeout {
    pub budget: Duration,
    pub rows: usize,
}

/// Solutions, one row per solution, columns in `variables` order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QueryResult {
    pub variables: Vec<String>,
    pub rows: Vec<Vec<TermId>>,
}

impl QueryResult {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn column(&self, var: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == var)
    }

    /// Rows as terms, for comparing results across stores.
    pub fn to_terms(&self, store: &TripleStore) -> Vec<Vec<Term>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|&id| store.term(id).clone()).collect())
            .collect()
    }
}

struct Compiled {
    patterns: Vec<[Slot; 3]>,
    nvars: usize,
    projection: Vec<usize>,
    variables: Vec<String>,
}

fn compile(query: &Query, store: &TripleStore) -> Compiled {
    let all = query.pattern_variables();
    let slot = |t: &PatternTerm| match t {
        PatternTerm::Var(v) => Slot::Var(all.iter().position(|a| a == v).expect("variable collected")),
        PatternTerm::Const(c) => store.lookup(c).map_or(Slot::Absent, Slot::Const),
    };
    let patterns = query
        .bgp
        .iter()
        .map(|tp| [slot(&tp.s), slot(&tp.p), slot(&tp.o)])
        .collect();
    let variables = query.projected();
    let projection = variables
        .iter()
        .map(|v| all.iter().position(|a| a == v).expect("projection validated"))
        .collect();
    Compiled {
        patterns,
        nvars: all.len(),
        projection,
        variables,
    }
}

fn const_pattern(slots: &[Slot; 3]) -> Pattern {
    let c = |s: Slot| match s {
        Slot::Const(id) => Some(id),
        _ => None,
    };
    Pattern::new(c(slots[0]), c(slots[1]), c(slots[2]))
}

/// Orders the patterns greedily: at each step the pattern with the smallest
/// estimated matches per partial solution. The estimate is the index count
/// for the pattern's constants, shrunk for every position bound by an earlier
/// step. Ties go to the pattern written first.
pub fn plan(query: &Query, store: &TripleStore) -> Plan {
    plan_compiled(&compile(query, store), store)
}

fn plan_compiled(c: &Compiled, store: &TripleStore) -> Plan {
    let unsatisfiable = c.patterns.iter().flatten().any(|s| *s == Slot::Absent);
    let base: Vec<usize> = c
        .patterns
        .iter()
        .map(|slots| {
            if unsatisfiable {
                0
            } else if slots.iter().all(|s| matches!(s, Slot::Var(_))) {
                store.len()
            } else {
                store.count(const_pattern(slots))
            }
        })
        .collect();

    let mut bound = HashSet::new();
    let mut remaining: Vec<usize> = (0..c.patterns.len()).collect();
    let mut steps = Vec::with_capacity(remaining.len());
    while !remaining.is_empty() {
        let key = |&i: &usize| {
            let slots = &c.patterns[i];
            let vars: Vec<usize> = slots
                .iter()
                .filter_map(|s| match s {
                    Slot::Var(v) => Some(*v),
                    _ => None,
                })
                .collect();
            let bound_positions = vars.iter().filter(|v| bound.contains(*v)).count();
            let divisor = BOUND_SELECTIVITY.saturating_pow(bound_positions as u32);
            (base[i].div_ceil(divisor), i)
        };
        let (at, &best) = remaining
            .iter()
            .enumerate()
            .min_by_key(|(_, i)| key(i))
            .expect("remaining is non-empty");
        let (estimate, _) = key(&best);
        remaining.remove(at);
        let slots = &c.patterns[best];
        let is_fixed = |s: &Slot| match s {
            Slot::Var(v) => bound.contains(v),
            _ => true,
        };
        let index = IndexKind::for_bound(is_fixed(&slots[0]), is_fixed(&slots[1]), is_fixed(&slots[2]));
        for s in slots {
            if let Slot::Var(v) = s {
                bound.insert(*v);
            }
        }
        steps.push(PlanStep {
            pattern: best,
            index,
            estimate,
        });
    }
    Plan { steps, unsatisfiable }
}

/// All solutions, sorted by projected terms.
pub fn evaluate(query: &Query, store: &TripleStore) -> QueryResult {
    run(query, store, None).expect("no budget, no timeout")
}

/// Like [`evaluate`], but gives up once `budget` of wall time has passed.
pub fn evaluate_with_budget(query: &Query, store: &TripleStore, budget: Duration) -> Result<QueryResult, Timeout> {
    run(query, store, Some(budget))
}

fn run(query: &Query, store: &TripleStore, budget: Option<Duration>) -> Result<QueryResult, Timeout> {
    let compiled = compile(query, store);
    let plan = plan_compiled(&compiled, store);
    let mut rows = Vec::new();
    if !plan.unsatisfiable {
        let order: Vec<[Slot; 3]> = plan.steps.iter().map(|s| compiled.patterns[s.pattern]).collect();
        let mut join = Join {
            store,
            order: &order,
            projection: &compiled.projection,
            bindings: vec![None; compiled.nvars],
            rows: &mut rows,
            deadline: budget.map(|b| (Instant::now() + b, b)),
            ticks: 0,
        };
        join.step(0)?;
    }
    rows.sort_by(|a, b| compare_rows(store, a, b));
    if query.distinct {
        rows.dedup();
    }
    Ok(QueryResult {
        variables: compiled.variables,
        rows,
    })
}

fn compare_rows(store: &TripleStore, a: &[TermId], b: &[TermId]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| if x == y { Ordering::Equal } else { store.term(*x).cmp(store.term(*y)) })
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

struct Join<'a> {
    store: &'a TripleStore,
    order: &'a [[Slot; 3]],
    projection: &'a [usize],
    bindings: Vec<Option<TermId>>,
    rows: &'a mut Vec<Vec<TermId>>,
    deadline: Option<(Instant, Duration)>,
    ticks: u32,
}

impl Join<'_> {
    fn step(&mut self, depth: usize) -> Result<(), Timeout> {
        let Some(slots) = self.order.get(depth) else {
            let row = self
                .projection
                .iter()
                .map(|&v| self.bindings[v].expect("every variable bound at the leaf"))
                .collect();
            self.rows.push(row);
            return Ok(());
        };
        let fixed = |s: Slot, b: &[Option<TermId>]| match s {
            Slot::Const(id) => Some(id),
            Slot::Var(v) => b[v],
            Slot::Absent => unreachable!("unsatisfiable plans are not run"),
        };
        let pattern = Pattern::new(
            fixed(slots[0], &self.bindings),
            fixed(slots[1], &self.bindings),
            fixed(slots[2], &self.bindings),
        );
        let store = self.store;
        for t in store.matching(pattern) {
            self.tick()?;
            let mut newly = [usize::MAX; 3];
            let mut ok = true;
            for (k, (slot, id)) in slots.iter().zip([t.s, t.p, t.o]).enumerate() {
                if let Slot::Var(v) = *slot {
                    match self.bindings[v] {
                        None => {
                            self.bindings[v] = Some(id);
                            newly[k] = v;
                        }
                        // a variable repeated inside this pattern
                        Some(b) if b != id => {
                            ok = false;
                            break;
                        }
                        Some(_) => {}
                    }
                }
            }
            if ok {
                self.step(depth + 1)?;
            }
            for v in newly.into_iter().filter(|&v| v != usize::MAX) {
                self.bindings[v] = None;
            }
        }
        Ok(())
    }

    fn tick(&mut self) -> Result<(), Timeout> {
        self.ticks += 1;
        if self.ticks.is_multiple_of(BUDGET_CHECK_INTERVAL) {
            if let Some((deadline, budget)) = self.deadline {
                if Instant::now() >= deadline {
                    return Err(Timeout {
                        budget,
                        rows: self.rows.len(),
                    });
                }
            }
        }
        Ok(())
    }
}
