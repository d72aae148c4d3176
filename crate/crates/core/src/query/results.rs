use serde_json::{Map, Value};

use super::QueryResult;
use crate::store::TripleStore;

/// Tab-separated rows with a `?var` header line; terms in N-Triples form.
pub fn to_tsv(result: &QueryResult, store: &TripleStore) -> String {
    let mut out = result
        .variables
        .iter()
        .map(|v| format!("?{v}"))
        .collect::<Vec<_>>()
        .join("\t");
    out.push('\n');
    for row in &result.rows {
        let cells: Vec<String> = row
            .iter()
            .map(|&id| store.term(id).to_ntriples().replace('\t', "\\t"))
            .collect();
        out.push_str(&cells.join("\t"));
        out.push('\n');
    }
    out
}

/// A JSON array with one object per row, keyed by variable name.
pub fn to_json(result: &QueryResult, store: &TripleStore) -> Value {
    let rows = result
        .rows
        .iter()
        .map(|row| {
            let obj: Map<String, Value> = result
                .variables
                .iter()
                .zip(row)
                .map(|(v, &id)| (v.clone(), Value::String(store.term(id).to_ntriples())))
                .collect();
            Value::Object(obj)
        })
        .collect();
    Value::Array(rows)
}
