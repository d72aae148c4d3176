//! The `spbench` command line.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::genbench::{
    audit_dir, compare_modes, default_queries, generate, load_query_dir, run_bench, BenchOptions, DataSource,
    GenConfig, SpRelation, StoreMode, CSV_HEADER, PLAIN_FILE, SP_FILE,
};
use crate::ntriples::{parse_line, parse_ntriples_reader, write_ntriples_to, OriginFilter, Severity};
use crate::query::{evaluate, evaluate_with_budget, parse_query, plan, to_json, to_tsv};
use crate::reasoner::{explain, materialize, MaterializeOptions, Ruleset, Strategy, DEFAULT_MAX_ROUNDS, DEFAULT_RULES};
use crate::singleton::SpVocabulary;
use crate::store::{Triple, TripleStore};

#[derive(Debug, Parser)]
#[command(name = "spbench", version, about = "Singleton-property RDF store, RDFS reasoner and benchmark")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a plain / singleton-property dataset pair.
    Generate(GenerateArgs),
    /// Parse N-Triples files and print store statistics.
    LoadCheck(LoadCheckArgs),
    /// Compute the RDFS closure and write it as N-Triples.
    Materialize(MaterializeArgs),
    /// Run one query.
    Query(QueryArgs),
    /// Load, materialize and query a dataset pair, reporting timings.
    Bench(BenchArgs),
    /// Print the derivation of an inferred triple.
    Explain(ExplainArgs),
    /// Cross-check a generated pair against its report.
    Audit(AuditArgs),
}

#[derive(Debug, Args)]
struct GenerateArgs {
    /// Number of universities.
    #[arg(long)]
    universities: Option<u32>,
    /// PRNG seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory for plain.nt, sp.nt and report.json.
    #[arg(long)]
    out: Option<PathBuf>,
    /// TOML config file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Also write each reified data triple into sp.nt.
    #[arg(long)]
    emit_data_triples: bool,
    /// Singleton relations as NAME:ARITY, comma separated
    /// (e.g. worksFor:2,advisor:1).
    #[arg(long, value_delimiter = ',')]
    relations: Option<Vec<String>>,
}

#[derive(Debug, Args)]
struct LoadCheckArgs {
    /// N-Triples files.
    #[arg(required = true)]
    files: Vec<PathBuf>,
}

#[derive(Debug, Args)]
struct ReasonerArgs {
    #[arg(long, default_value = "seminaive")]
    strategy: Strategy,
    /// Comma-separated rule names.
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_RULES.map(String::from))]
    rules: Vec<String>,
    /// Leave out the singletonPropertyOf sub-property axiom.
    #[arg(long)]
    no_meta_axiom: bool,
    #[arg(long, default_value_t = DEFAULT_MAX_ROUNDS)]
    max_rounds: usize,
    /// Triple ceiling; defaults to ten times the input size.
    #[arg(long)]
    max_triples: Option<usize>,
}

impl ReasonerArgs {
    fn ruleset(&self) -> Result<Ruleset> {
        Ok(Ruleset::select(&self.rules, &SpVocabulary::default(), !self.no_meta_axiom)?)
    }

    fn options(&self, trace: bool) -> MaterializeOptions {
        MaterializeOptions {
            strategy: self.strategy,
            trace,
            max_rounds: self.max_rounds,
            max_triples: self.max_triples,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Only {
    All,
    Base,
    Inferred,
}

#[derive(Debug, Args)]
struct MaterializeArgs {
    #[arg(required = true)]
    files: Vec<PathBuf>,
    #[command(flatten)]
    reasoner: ReasonerArgs,
    /// Which triples to write.
    #[arg(long, value_enum, default_value = "all")]
    only: Only,
    /// Output file; stdout if absent.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Write the derivation trace to this file.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Debug, Args)]
struct QueryArgs {
    /// N-Triples files to load.
    #[arg(long, required = true, num_args = 1..)]
    data: Vec<PathBuf>,
    /// Query file (.rq).
    #[arg(long, conflicts_with = "text", required_unless_present = "text")]
    query: Option<PathBuf>,
    /// Query text.
    #[arg(long)]
    text: Option<String>,
    /// Materialize the RDFS closure first. Without it, data triples that are
    /// only implied by singleton properties are not found.
    #[arg(long)]
    materialize: bool,
    #[command(flatten)]
    reasoner: ReasonerArgs,
    #[arg(long, value_enum, default_value = "tsv")]
    format: Format,
    /// Wall-clock budget for evaluation.
    #[arg(long)]
    timeout_ms: Option<u64>,
    /// Print the join plan to stderr.
    #[arg(long)]
    plan: bool,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Directory holding plain.nt and sp.nt from `generate`.
    #[arg(long, conflicts_with_all = ["plain", "sp"], required_unless_present_all = ["plain", "sp"])]
    dir: Option<PathBuf>,
    #[arg(long, requires = "sp")]
    plain: Option<PathBuf>,
    #[arg(long, requires = "plain")]
    sp: Option<PathBuf>,
    /// Directory of .rq files; the shipped queries if absent.
    #[arg(long)]
    queries: Option<PathBuf>,
    /// Repetitions per query.
    #[arg(long, default_value_t = 3)]
    runs: usize,
    #[arg(long)]
    timeout_ms: Option<u64>,
    #[arg(long, default_value = "seminaive")]
    strategy: Strategy,
    /// Write CSV rows here as well as the table to stdout.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Warn when singleton-store query time exceeds this multiple of the
    /// plain store's.
    #[arg(long, default_value_t = 1.5)]
    factor: f64,
}

#[derive(Debug, Args)]
struct ExplainArgs {
    #[arg(long, required = true, num_args = 1..)]
    data: Vec<PathBuf>,
    /// The triple in N-Triples syntax; the final " ." is optional.
    #[arg(long)]
    triple: String,
    #[command(flatten)]
    reasoner: ReasonerArgs,
}

#[derive(Debug, Args)]
struct AuditArgs {
    #[arg(long)]
    dir: PathBuf,
}

/// Parses `args` and runs the command. Usage errors exit with 2, runtime
/// errors with 1.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code().clamp(0, 255) as u8);
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn dispatch(command: Command) -> Result<ExitCode> {
    match command {
        Command::Generate(a) => cmd_generate(a),
        Command::LoadCheck(a) => cmd_load_check(a),
        Command::Materialize(a) => cmd_materialize(a),
        Command::Query(a) => cmd_query(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Explain(a) => cmd_explain(a),
        Command::Audit(a) => cmd_audit(a),
    }
}

/// Loads files, printing diagnostics to stderr. Fails on any error line.
fn load(files: &[PathBuf]) -> Result<TripleStore> {
    let mut store = TripleStore::new();
    let mut errors = 0;
    for path in files {
        let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
        let outcome = parse_ntriples_reader(BufReader::new(file), &mut store);
        for d in &outcome.diagnostics {
            eprintln!("{}:{d}", path.display());
            errors += usize::from(d.severity == Severity::Error);
        }
    }
    if errors > 0 {
        bail!("{errors} malformed line(s)");
    }
    Ok(store)
}

fn cmd_generate(a: GenerateArgs) -> Result<ExitCode> {
    let mut config = match &a.config {
        Some(path) => GenConfig::from_file(path)?,
        None => GenConfig::default(),
    };
    if let Some(u) = a.universities {
        config.universities = u;
    }
    if let Some(s) = a.seed {
        config.seed = s;
    }
    if a.emit_data_triples {
        config.emit_data_triples = true;
    }
    if let Some(rels) = &a.relations {
        config.sp_relations = rels
            .iter()
            .map(|r| {
                let (name, arity) = r.split_once(':').with_context(|| format!("{r:?}: expected NAME:ARITY"))?;
                let arity = arity.parse().with_context(|| format!("{r:?}: bad arity"))?;
                Ok(SpRelation::new(name, arity))
            })
            .collect::<Result<_>>()?;
    }
    if let Some(out) = a.out {
        config.out_dir = Some(out);
    }
    let Some(dir) = config.out_dir.clone() else {
        bail!("no output directory: pass --out or set out_dir in the config");
    };
    let generated = generate(&config)?;
    generated.write_to(&dir)?;
    println!("{}", serde_json::to_string_pretty(&generated.report)?);
    Ok(ExitCode::SUCCESS)
}

fn cmd_load_check(a: LoadCheckArgs) -> Result<ExitCode> {
    let store = load(&a.files)?;
    let s = store.stats();
    println!("terms\t{}", s.term_count);
    println!("triples\t{}", s.triple_count);
    println!("base\t{}", s.base_count);
    println!("inferred\t{}", s.inferred_count);
    Ok(ExitCode::SUCCESS)
}

fn cmd_materialize(a: MaterializeArgs) -> Result<ExitCode> {
    let mut store = load(&a.files)?;
    let ruleset = a.reasoner.ruleset()?;
    let report = materialize(&mut store, &ruleset, &a.reasoner.options(a.trace.is_some()))?;
    eprintln!(
        "{} inferred in {} rounds ({} axioms added)",
        report.inferred_count, report.rounds, report.axioms_added
    );
    let filter = match a.only {
        Only::All => OriginFilter::All,
        Only::Base => OriginFilter::Base,
        Only::Inferred => OriginFilter::Inferred,
    };
    write_output(a.output.as_deref(), |w| write_ntriples_to(&store, filter, w))?;
    if let (Some(path), Some(trace)) = (&a.trace, &report.trace) {
        fs::write(path, trace.render(&store)).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn write_output(path: Option<&Path>, body: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Result<()> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?);
            body(&mut w)?;
            w.flush()?;
        }
        None => {
            let mut w = BufWriter::new(io::stdout().lock());
            body(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn cmd_query(a: QueryArgs) -> Result<ExitCode> {
    let text = match (&a.query, a.text) {
        (Some(path), _) => fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?,
        (None, Some(t)) => t,
        (None, None) => unreachable!("clap requires one of --query and --text"),
    };
    let query = parse_query(&text)?;
    let mut store = load(&a.data)?;
    if a.materialize {
        materialize(&mut store, &a.reasoner.ruleset()?, &a.reasoner.options(false))?;
    }
    if a.plan {
        eprint!("{}", plan(&query, &store).render(&query));
    }
    let result = match a.timeout_ms {
        Some(ms) => evaluate_with_budget(&query, &store, Duration::from_millis(ms))?,
        None => evaluate(&query, &store),
    };
    match a.format {
        Format::Tsv => print!("{}", to_tsv(&result, &store)),
        Format::Json => println!("{}", to_json(&result, &store)),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_bench(a: BenchArgs) -> Result<ExitCode> {
    let (plain, sp) = match (&a.dir, a.plain, a.sp) {
        (Some(d), _, _) => (d.join(PLAIN_FILE), d.join(SP_FILE)),
        (None, Some(p), Some(s)) => (p, s),
        _ => unreachable!("clap requires --dir or both --plain and --sp"),
    };
    let queries = match &a.queries {
        Some(dir) => load_query_dir(dir).with_context(|| format!("reading queries from {}", dir.display()))?,
        None => default_queries(),
    };
    let options = BenchOptions {
        runs: a.runs,
        budget: a.timeout_ms.map(Duration::from_millis),
        strategy: a.strategy,
        ..Default::default()
    };
    let name = |p: &Path| p.display().to_string();
    let plain_report = run_bench(StoreMode::Plain, &name(&plain), &[DataSource::File(plain.clone())], &queries, &options);
    let sp_report = run_bench(StoreMode::Sp, &name(&sp), &[DataSource::File(sp.clone())], &queries, &options);
    print!("{}\n{}", plain_report.to_table(), sp_report.to_table());

    let cmp = compare_modes(&plain_report, &sp_report);
    println!(
        "\nsp / plain query time over {} queries: {:.3} ms / {:.3} ms = {:.3}",
        cmp.queries.len(),
        cmp.sp_ms,
        cmp.plain_ms,
        cmp.ratio()
    );
    if !cmp.within(a.factor) {
        eprintln!("warning: singleton store queries took more than {}x the plain store's", a.factor);
    }
    if !cmp.count_mismatches.is_empty() {
        eprintln!("warning: result counts differ for {}", cmp.count_mismatches.join(", "));
    }
    if let Some(path) = &a.csv {
        let csv = format!("{CSV_HEADER}\n{}{}", plain_report.to_csv(false), sp_report.to_csv(false));
        fs::write(path, csv).with_context(|| format!("writing {}", path.display()))?;
    }
    let failed = [&plain_report, &sp_report]
        .iter()
        .any(|r| r.rows.iter().any(|row| row.status == crate::genbench::Status::Error));
    Ok(if failed { ExitCode::FAILURE } else { ExitCode::SUCCESS })
}

fn cmd_explain(a: ExplainArgs) -> Result<ExitCode> {
    let line = a.triple.trim();
    let line = if line.ends_with('.') { line.to_owned() } else { format!("{line} .") };
    let (s, p, o) = parse_line(&line)
        .map_err(|e| anyhow::anyhow!("--triple, column {}: {}", e.column, e.message))?
        .context("--triple is empty")?;
    let mut store = load(&a.data)?;
    let report = materialize(&mut store, &a.reasoner.ruleset()?, &a.reasoner.options(true))?;
    let trace = report.trace.expect("tracing was requested");
    let ids = (store.lookup(&s), store.lookup(&p), store.lookup(&o));
    let (Some(s), Some(p), Some(o)) = ids else {
        bail!("{} is not in the closure", a.triple);
    };
    for d in explain(&trace, &store, &Triple::new(s, p, o))? {
        println!("{}", d.render(&store));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_audit(a: AuditArgs) -> Result<ExitCode> {
    let report = audit_dir(&a.dir).with_context(|| format!("auditing {}", a.dir.display()))?;
    print!("{report}");
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}
