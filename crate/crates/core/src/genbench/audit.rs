//! Cross-checks a generated pair against itself and its report.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::io;
use std::path::Path;

use super::generator::{GenReport, PLAIN_FILE, REPORT_FILE, SP_FILE};
use crate::ntriples::parse_ntriples;
use crate::singleton::{enumerate_singletons, SpVocabulary};
use crate::store::TripleStore;
use crate::term::Term;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AuditReport {
    pub checks: Vec<Check>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn check(&mut self, name: &'static str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name,
            passed,
            detail: detail.into(),
        });
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail)?;
        }
        Ok(())
    }
}

type TermTriple = (Term, Term, Term);

/// Audits a plain/singleton pair given as N-Triples text, and the generator
/// report if there is one.
pub fn audit(plain_nt: &str, sp_nt: &str, report: Option<&GenReport>) -> AuditReport {
    let mut out = AuditReport::default();
    let mut plain = TripleStore::new();
    let mut sp = TripleStore::new();
    let pe = parse_ntriples(plain_nt, &mut plain).errors().count();
    let se = parse_ntriples(sp_nt, &mut sp).errors().count();
    out.check("parse", pe + se == 0, format!("{pe} plain and {se} singleton parse errors"));

    let vocab = SpVocabulary::default();
    let scan = enumerate_singletons(&sp, &vocab);
    out.check(
        "well-formed singletons",
        scan.malformed.is_empty(),
        format!("{} singletons, {} malformed", scan.descriptors.len(), scan.malformed.len()),
    );

    let resolve = |store: &TripleStore, t| {
        let (s, p, o) = store.resolve(&t);
        (s.clone(), p.clone(), o.clone())
    };
    let vocabulary: BTreeSet<TermTriple> = vocab.axioms(true).into_iter().collect();
    let spof = sp.lookup(&Term::iri(&vocab.singleton_property_of));
    let mut singleton_graph = BTreeSet::new();
    let mut data = BTreeSet::new();
    let mut per_generic: BTreeMap<String, usize> = BTreeMap::new();
    let mut structure = 0usize;
    for d in &scan.descriptors {
        if let Some(spof) = spof {
            singleton_graph.extend(d.triples(spof).into_iter().map(|t| resolve(&sp, t)));
        }
        data.insert(resolve(&sp, d.data_triple()));
        structure += 1 + d.meta.len();
        let generic = sp.term(d.generic).as_iri().unwrap_or_default().to_owned();
        *per_generic.entry(generic).or_default() += 1;
    }
    let plain_set = plain.to_term_set();
    let sp_set = sp.to_term_set();
    let emitted = !data.is_empty() && data.iter().all(|t| sp_set.contains(t));
    let rest: BTreeSet<TermTriple> = sp_set
        .iter()
        .filter(|t| !singleton_graph.contains(*t) && !vocabulary.contains(*t))
        .cloned()
        .collect();
    let rebuilt: BTreeSet<TermTriple> = rest.union(&data).cloned().collect();
    let missing = plain_set.difference(&rebuilt).count();
    let extra = rebuilt.difference(&plain_set).count();
    out.check(
        "pair completeness",
        missing == 0 && extra == 0,
        format!("{missing} plain triples not represented, {extra} represented triples not in plain"),
    );

    let mut k_plain: BTreeMap<String, usize> = BTreeMap::new();
    for (_, p, _) in &plain_set {
        if let Some(iri) = p.as_iri().filter(|i| per_generic.contains_key(*i)) {
            *k_plain.entry(iri.to_owned()).or_default() += 1;
        }
    }
    out.check(
        "relation counts",
        k_plain == per_generic,
        format!("{} singleton relations", per_generic.len()),
    );

    let v = vocabulary.iter().filter(|t| sp_set.contains(*t)).count();
    let k: usize = per_generic.values().sum();
    let expected = plain.len() + structure + v + if emitted { k } else { 0 };
    out.check(
        "size formula",
        expected == sp.len(),
        format!(
            "{} plain + {structure} singleton structure + {v} vocabulary{} = {expected}; file has {}",
            plain.len(),
            if emitted { format!(" + {k} data") } else { String::new() },
            sp.len()
        ),
    );

    if let Some(r) = report {
        let ratio = sp.len() as f64 / plain.len() as f64;
        let relation_counts_match = r
            .relation_counts
            .iter()
            .all(|(rel, n)| per_generic.get(rel).copied().unwrap_or(0) == *n)
            && per_generic.keys().all(|rel| r.relation_counts.contains_key(rel));
        let agrees = r.plain_triple_count == plain.len()
            && r.sp_triple_count == sp.len()
            && r.sp_count == scan.descriptors.len()
            && r.ratio == ratio
            && r.emit_data_triples == emitted
            && relation_counts_match;
        out.check(
            "report arithmetic",
            agrees,
            format!(
                "report says {}/{} = {:.4} with {} singletons; files give {}/{} = {ratio:.4} with {}",
                r.sp_triple_count,
                r.plain_triple_count,
                r.ratio,
                r.sp_count,
                sp.len(),
                plain.len(),
                scan.descriptors.len()
            ),
        );
    }
    out
}

/// Audits `plain.nt`, `sp.nt` and, when present, `report.json` in `dir`.
pub fn audit_dir(dir: &Path) -> io::Result<AuditReport> {
    let plain = fs::read_to_string(dir.join(PLAIN_FILE))?;
    let sp = fs::read_to_string(dir.join(SP_FILE))?;
    let report = match fs::read_to_string(dir.join(REPORT_FILE)) {
        Ok(text) => Some(serde_json::from_str::<GenReport>(&text).map_err(io::Error::other)?),
        Err(e) if e.kind() == io::ErrorKind::NotFound => None,
        Err(e) => return Err(e),
    };
    Ok(audit(&plain, &sp, report.as_ref()))
}
