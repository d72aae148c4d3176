//! The shipped benchmark queries: fourteen data-pattern queries in the style
//! of the LUBM set and three mixed variants that also match singleton
//! properties and their start years.

use std::fs;
use std::io;
use std::path::Path;

use crate::query::{parse_query, Query, QueryError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchQuery {
    pub name: String,
    pub text: String,
}

impl BenchQuery {
    pub fn new(name: impl Into<String>, text: impl Into<String>) -> Self {
        BenchQuery {
            name: name.into(),
            text: text.into(),
        }
    }

    pub fn parse(&self) -> Result<Query, QueryError> {
        parse_query(&self.text)
    }
}

macro_rules! shipped {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../../queries/", $name, ".rq")))),*]
    };
}

const DATA_QUERIES: &[(&str, &str)] = shipped!(
    "q01", "q02", "q03", "q04", "q05", "q06", "q07", "q08", "q09", "q10", "q11", "q12", "q13", "q14",
);

const MIXED_QUERIES: &[(&str, &str)] = shipped!("q02_mixed", "q07_mixed", "q09_mixed");

/// The data-pattern queries, which never mention singleton properties.
pub fn data_queries() -> Vec<BenchQuery> {
    DATA_QUERIES.iter().map(|(n, t)| BenchQuery::new(*n, *t)).collect()
}

pub fn mixed_queries() -> Vec<BenchQuery> {
    MIXED_QUERIES.iter().map(|(n, t)| BenchQuery::new(*n, *t)).collect()
}

/// Data queries followed by mixed queries, each mixed one after its base.
pub fn default_queries() -> Vec<BenchQuery> {
    let mut out = data_queries();
    for m in mixed_queries() {
        let base = m.name.trim_end_matches("_mixed");
        let at = out.iter().position(|q| q.name == base).map_or(out.len(), |i| i + 1);
        out.insert(at, m);
    }
    out
}

/// Every `.rq` file in `dir`, named by file stem, sorted by name.
pub fn load_query_dir(dir: &Path) -> io::Result<Vec<BenchQuery>> {
    let mut out = Vec::new();
    for entry in fs::read_dir(dir)? {
        let path = entry?.path();
        if path.extension().is_some_and(|e| e == "rq") {
            let name = path.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            out.push(BenchQuery::new(name, fs::read_to_string(&path)?));
        }
    }
    out.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(out)
}
