//! The benchmark protocol: load, materialize, then every query a fixed number
//! of times against the warm store.

use std::fmt;
use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::{Duration, Instant};

use super::queries::BenchQuery;
use crate::ntriples::{parse_ntriples, parse_ntriples_reader, ParseOutcome};
use crate::query::evaluate_with_budget;
use crate::reasoner::{materialize, MaterializeOptions, Ruleset, Strategy};
use crate::singleton::SpVocabulary;
use crate::store::TripleStore;

pub const CSV_HEADER: &str = "phase,dataset,mode,query,run,wall_ms,result_count,status";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StoreMode {
    Plain,
    Sp,
}

impl fmt::Display for StoreMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StoreMode::Plain => "plain",
            StoreMode::Sp => "sp",
        })
    }
}

impl FromStr for StoreMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plain" => Ok(StoreMode::Plain),
            "sp" => Ok(StoreMode::Sp),
            other => Err(format!("unknown mode {other:?} (expected plain or sp)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Load,
    Materialize,
    Query,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::Load => "load",
            Phase::Materialize => "materialize",
            Phase::Query => "query",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Timeout,
    /// A mixed query against a store that has no singleton properties.
    NotApplicable,
    Error,
    /// An earlier phase failed.
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Ok => "ok",
            Status::Timeout => "timeout",
            Status::NotApplicable => "n/a",
            Status::Error => "error",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Run {
    Once,
    Nth(usize),
    Mean,
}

impl fmt::Display for Run {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Run::Once => f.write_str("1"),
            Run::Nth(n) => write!(f, "{n}"),
            Run::Mean => f.write_str("mean"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub phase: Phase,
    pub query: Option<String>,
    pub run: Run,
    pub wall_ms: f64,
    /// Triples for load and materialize, solutions for queries.
    pub result_count: Option<usize>,
    pub status: Status,
    pub detail: Option<String>,
}

/// Where a dataset comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DataSource {
    File(PathBuf),
    Text(String),
}

#[derive(Debug, Clone)]
pub struct BenchOptions {
    pub runs: usize,
    /// Per query evaluation.
    pub budget: Option<Duration>,
    pub strategy: Strategy,
    pub ruleset: Ruleset,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions {
            runs: 3,
            budget: None,
            strategy: Strategy::SemiNaive,
            ruleset: Ruleset::rdfs_default(&SpVocabulary::default()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub dataset: String,
    pub mode: StoreMode,
    pub rows: Vec<BenchRow>,
    pub base_count: usize,
    pub inferred_count: Option<usize>,
}

impl BenchReport {
    fn summary(&self, query: &str) -> Option<&BenchRow> {
        self.rows
            .iter()
            .find(|r| r.phase == Phase::Query && r.query.as_deref() == Some(query) && r.run == Run::Mean)
    }

    pub fn query_status(&self, query: &str) -> Option<Status> {
        self.summary(query).map(|r| r.status)
    }

    pub fn result_count(&self, query: &str) -> Option<usize> {
        self.summary(query).filter(|r| r.status == Status::Ok).and_then(|r| r.result_count)
    }

    /// Mean wall time of a query that completed.
    pub fn query_ms(&self, query: &str) -> Option<f64> {
        self.summary(query).filter(|r| r.status == Status::Ok).map(|r| r.wall_ms)
    }

    pub fn queries(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for r in &self.rows {
            if let Some(q) = r.query.as_deref() {
                if !out.contains(&q) {
                    out.push(q);
                }
            }
        }
        out
    }

    /// Sum of mean query times, excluding queries that did not complete.
    pub fn total_query_ms(&self) -> f64 {
        self.queries().iter().filter_map(|q| self.query_ms(q)).sum()
    }

    pub fn phase_ms(&self, phase: Phase) -> Option<f64> {
        self.rows.iter().find(|r| r.phase == phase).map(|r| r.wall_ms)
    }

    pub fn to_csv(&self, with_header: bool) -> String {
        let mut out = String::new();
        if with_header {
            out.push_str(CSV_HEADER);
            out.push('\n');
        }
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{:.3},{},{}\n",
                r.phase,
                csv_field(&self.dataset),
                self.mode,
                csv_field(r.query.as_deref().unwrap_or("")),
                r.run,
                r.wall_ms,
                r.result_count.map(|c| c.to_string()).unwrap_or_default(),
                r.status
            ));
        }
        out
    }

    pub fn to_table(&self) -> String {
        let mut out = format!("{} ({})\n", self.dataset, self.mode);
        for r in self.rows.iter().filter(|r| matches!(r.run, Run::Once | Run::Mean)) {
            let label = match (&r.phase, &r.query) {
                (Phase::Query, Some(q)) => q.clone(),
                (p, _) => p.to_string(),
            };
            let count = r.result_count.map(|c| c.to_string()).unwrap_or_else(|| "-".into());
            let time = match r.status {
                Status::Ok => format!("{:.3} ms", r.wall_ms),
                s => s.to_string(),
            };
            out.push_str(&format!("  {label:<14} {count:>10}  {time:>14}"));
            if let Some(d) = &r.detail {
                out.push_str(&format!("  ({d})"));
            }
            out.push('\n');
        }
        if let Some(n) = self.inferred_count {
            out.push_str(&format!("  inferred triples: {n}\n"));
        }
        out.push_str(&format!("  total query time (completed only): {:.3} ms\n", self.total_query_ms()));
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1000.0
}

fn load(sources: &[DataSource], store: &mut TripleStore) -> Result<(), String> {
    for source in sources {
        let outcome: ParseOutcome = match source {
            DataSource::Text(text) => parse_ntriples(text, store),
            DataSource::File(path) => {
                let file = File::open(path).map_err(|e| format!("{}: {e}", path.display()))?;
                parse_ntriples_reader(BufReader::new(file), store)
            }
        };
        let first = outcome.errors().next().map(|e| e.to_string());
        if let Some(e) = first {
            let n = outcome.errors().count();
            return Err(format!("{n} malformed line(s), first at {e}"));
        }
    }
    Ok(())
}

/// Runs the protocol on one dataset. Failures are recorded as rows; phases
/// that depend on a failed one are marked skipped.
pub fn run_bench(
    mode: StoreMode,
    dataset: &str,
    sources: &[DataSource],
    queries: &[BenchQuery],
    options: &BenchOptions,
) -> BenchReport {
    let mut report = BenchReport {
        dataset: dataset.to_owned(),
        mode,
        rows: Vec::new(),
        base_count: 0,
        inferred_count: None,
    };
    let phase_row = |phase, wall_ms, result_count, status, detail| BenchRow {
        phase,
        query: None,
        run: Run::Once,
        wall_ms,
        result_count,
        status,
        detail,
    };

    let mut store = TripleStore::new();
    let started = Instant::now();
    let loaded = load(sources, &mut store);
    let elapsed = ms(started.elapsed());
    report.base_count = store.len();
    let mut ok = loaded.is_ok();
    report.rows.push(match loaded {
        Ok(()) => phase_row(Phase::Load, elapsed, Some(store.len()), Status::Ok, None),
        Err(e) => phase_row(Phase::Load, elapsed, None, Status::Error, Some(e)),
    });

    if ok {
        let opts = MaterializeOptions::with_strategy(options.strategy);
        let started = Instant::now();
        let result = materialize(&mut store, &options.ruleset, &opts);
        let elapsed = ms(started.elapsed());
        report.rows.push(match result {
            Ok(r) => {
                report.inferred_count = Some(r.inferred_count);
                phase_row(Phase::Materialize, elapsed, Some(r.inferred_count), Status::Ok, None)
            }
            Err(e) => {
                ok = false;
                phase_row(Phase::Materialize, elapsed, None, Status::Error, Some(e.to_string()))
            }
        });
    } else {
        report.rows.push(phase_row(Phase::Materialize, 0.0, None, Status::Skipped, None));
    }

    let sp_of = SpVocabulary::default().singleton_property_of;
    for q in queries {
        let summary = |wall_ms, result_count, status, detail| BenchRow {
            phase: Phase::Query,
            query: Some(q.name.clone()),
            run: Run::Mean,
            wall_ms,
            result_count,
            status,
            detail,
        };
        if !ok {
            report.rows.push(summary(0.0, None, Status::Skipped, None));
            continue;
        }
        let parsed = match q.parse() {
            Ok(p) => p,
            Err(e) => {
                report.rows.push(summary(0.0, None, Status::Error, Some(e.to_string())));
                continue;
            }
        };
        if mode == StoreMode::Plain && parsed.mentions_iri(&sp_of) {
            report.rows.push(summary(0.0, None, Status::NotApplicable, None));
            continue;
        }
        let mut times = Vec::with_capacity(options.runs);
        let mut count = None;
        let mut timed_out = None;
        for run in 1..=options.runs.max(1) {
            let started = Instant::now();
            let result = match options.budget {
                Some(b) => evaluate_with_budget(&parsed, &store, b),
                None => Ok(crate::query::evaluate(&parsed, &store)),
            };
            let elapsed = ms(started.elapsed());
            match result {
                Ok(r) => {
                    times.push(elapsed);
                    count = Some(r.len());
                    report.rows.push(BenchRow {
                        phase: Phase::Query,
                        query: Some(q.name.clone()),
                        run: Run::Nth(run),
                        wall_ms: elapsed,
                        result_count: count,
                        status: Status::Ok,
                        detail: None,
                    });
                }
                Err(t) => {
                    timed_out = Some(t.to_string());
                    break;
                }
            }
        }
        report.rows.push(match timed_out {
            Some(detail) => summary(0.0, None, Status::Timeout, Some(detail)),
            None => summary(times.iter().sum::<f64>() / times.len() as f64, count, Status::Ok, None),
        });
    }
    report
}

/// Query time of the singleton-property store relative to the plain one,
/// over the queries that completed on both.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeComparison {
    pub plain_ms: f64,
    pub sp_ms: f64,
    pub queries: Vec<String>,
    /// Queries whose result counts differ between the two stores.
    pub count_mismatches: Vec<String>,
}

impl ModeComparison {
    pub fn ratio(&self) -> f64 {
        if self.plain_ms > 0.0 {
            self.sp_ms / self.plain_ms
        } else {
            f64::NAN
        }
    }

    pub fn within(&self, factor: f64) -> bool {
        self.ratio() <= factor
    }
}

pub fn compare_modes(plain: &BenchReport, sp: &BenchReport) -> ModeComparison {
    let mut cmp = ModeComparison {
        plain_ms: 0.0,
        sp_ms: 0.0,
        queries: Vec::new(),
        count_mismatches: Vec::new(),
    };
    for q in plain.queries() {
        if let (Some(a), Some(b)) = (plain.query_ms(q), sp.query_ms(q)) {
            cmp.plain_ms += a;
            cmp.sp_ms += b;
            cmp.queries.push(q.to_owned());
            if plain.result_count(q) != sp.result_count(q) {
                cmp.count_mismatches.push(q.to_owned());
            }
        }
    }
    cmp
}
