//! A SPARQL subset: `SELECT [DISTINCT] ... WHERE { basic graph pattern }`.
//!
//! Evaluation is a nested index join in the order chosen by [`plan`]. Results
//! are sorted by the projected terms, so output is stable across runs and
//! across stores that intern terms in different orders. No inference happens
//! here; run [`crate::reasoner::materialize`] first.
//!
//! Blank nodes in a pattern act as variables that cannot be projected.

mod eval;
mod parser;
mod results;

use std::fmt;

use thiserror::Error;

pub use eval::{evaluate, evaluate_with_budget, plan, Plan, PlanStep, QueryResult, Timeout};
pub use parser::parse_query;
pub use results::{to_json, to_tsv};

use crate::term::Term;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PatternTerm {
    /// Name without the `?`/`$` sigil; blank nodes keep their `_:` prefix.
    Var(String),
    Const(Term),
}

impl PatternTerm {
    pub fn var(name: &str) -> Self {
        PatternTerm::Var(name.to_owned())
    }

    pub fn as_var(&self) -> Option<&str> {
        match self {
            PatternTerm::Var(v) => Some(v),
            PatternTerm::Const(_) => None,
        }
    }
}

impl fmt::Display for PatternTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternTerm::Var(v) if v.starts_with("_:") => f.write_str(v),
            PatternTerm::Var(v) => write!(f, "?{v}"),
            PatternTerm::Const(t) => write!(f, "{t}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TriplePattern {
    pub s: PatternTerm,
    pub p: PatternTerm,
    pub o: PatternTerm,
}

impl TriplePattern {
    pub fn new(s: PatternTerm, p: PatternTerm, o: PatternTerm) -> Self {
        TriplePattern { s, p, o }
    }

    pub fn terms(&self) -> [&PatternTerm; 3] {
        [&self.s, &self.p, &self.o]
    }
}

impl fmt::Display for TriplePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.s, self.p, self.o)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Projection {
    All,
    Vars(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    pub projection: Projection,
    pub bgp: Vec<TriplePattern>,
    pub distinct: bool,
}

impl Query {
    /// Builds a query and checks that the pattern is non-empty and every
    /// projected variable occurs in it.
    pub fn new(projection: Projection, bgp: Vec<TriplePattern>, distinct: bool) -> Result<Self, QueryError> {
        if bgp.is_empty() {
            return Err(QueryError::Syntax {
                line: 1,
                column: 1,
                message: "empty graph pattern".into(),
            });
        }
        let q = Query {
            projection,
            bgp,
            distinct,
        };
        if let Projection::Vars(vars) = &q.projection {
            let all = q.pattern_variables();
            if let Some(v) = vars.iter().find(|v| !all.contains(v)) {
                return Err(QueryError::UnboundProjection(v.clone()));
            }
        }
        Ok(q)
    }

    /// Every variable in the pattern, in order of first occurrence.
    pub fn pattern_variables(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for tp in &self.bgp {
            for v in tp.terms().into_iter().filter_map(PatternTerm::as_var) {
                if !out.iter().any(|o| o == v) {
                    out.push(v.to_owned());
                }
            }
        }
        out
    }

    /// The result columns. `*` expands to the named variables in order of
    /// first occurrence.
    pub fn projected(&self) -> Vec<String> {
        match &self.projection {
            Projection::Vars(v) => v.clone(),
            Projection::All => self
                .pattern_variables()
                .into_iter()
                .filter(|v| !v.starts_with("_:"))
                .collect(),
        }
    }

    /// Whether any pattern mentions `iri` as a constant.
    pub fn mentions_iri(&self, iri: &str) -> bool {
        self.bgp.iter().any(|tp| {
            tp.terms()
                .into_iter()
                .any(|t| matches!(t, PatternTerm::Const(c) if c.as_iri() == Some(iri)))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("{line}:{column}: syntax error: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{line}:{column}: unknown prefix {prefix:?}")]
    UnknownPrefix {
        prefix: String,
        line: usize,
        column: usize,
    },
    #[error("projected variable ?{0} does not occur in the pattern")]
    UnboundProjection(String),
}
