use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn spbench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spbench"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("spawn spbench")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

const TEMPORAL: &str = "data/temporal_sp.nt";

#[test]
fn load_check_reports_counts() {
    let o = spbench(&["load-check", TEMPORAL]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("triples\t11\n"));
}

#[test]
fn load_check_fails_on_bad_lines() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.nt");
    std::fs::write(&bad, "<http://a> <http://b> <http://c> .\n<http://a> \"p\" <http://c> .\n").unwrap();
    let o = spbench(&["load-check", path(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("bad.nt:2:"), "{}", stderr(&o));
}

#[test]
fn materialize_writes_inferred_triples() {
    let o = spbench(&["materialize", TEMPORAL, "--only", "inferred"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 18);
    assert!(out.contains("<http://example.org/ProfessorA> <http://example.org/memberOf> <http://example.org/University1> .\n"));

    let o = spbench(&["materialize", TEMPORAL, "--only", "inferred", "--no-meta-axiom"]);
    assert!(!stdout(&o).contains("<http://example.org/ProfessorA> <http://example.org/worksFor>"));
}

#[test]
fn materialize_to_file_with_trace() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("closure.nt");
    let trace = dir.path().join("trace.txt");
    let o = spbench(&["materialize", TEMPORAL, "--strategy", "naive", "-o", path(&out), "--trace", path(&trace)]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(std::fs::read_to_string(&out).unwrap().lines().count(), 36);
    assert_eq!(std::fs::read_to_string(&trace).unwrap().lines().count(), 18);
}

#[test]
fn query_needs_materialization() {
    let q = ["query", "--data", TEMPORAL, "--query", "queries/example_university.rq"];
    let o = spbench(&q);
    assert_eq!(stdout(&o), "?university\n");

    let o = spbench(&[&q[..], &["--materialize", "--format", "json"]].concat());
    let rows: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 2);
}

#[test]
fn query_text_and_plan() {
    let o = spbench(&[
        "query",
        "--data",
        TEMPORAL,
        "--materialize",
        "--plan",
        "--text",
        "SELECT ?p WHERE { ?sp <http://example.org/from> \"2009\" . ?s ?sp ?p }",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "?p\n<http://example.org/ProfessorA>\n");
    assert!(stderr(&o).starts_with("1. "));
}

#[test]
fn query_syntax_error_is_a_runtime_error() {
    let o = spbench(&["query", "--data", TEMPORAL, "--text", "SELECT ?x WHERE { ?x }"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error:"));
}

#[test]
fn explain_prints_the_chain() {
    let triple = "<http://example.org/ProfessorA> <http://example.org/memberOf> <http://example.org/University1>";
    let o = spbench(&["explain", "--data", TEMPORAL, "--triple", triple]);
    assert!(o.status.success(), "{}", stderr(&o));
    let lines: Vec<_> = stdout(&o).lines().map(str::to_owned).collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[2].starts_with(triple));
    assert!(lines.iter().all(|l| l.contains("rdfs7(")));

    let base = "<http://example.org/worksFor> <http://www.w3.org/2000/01/rdf-schema#subPropertyOf> <http://example.org/memberOf> .";
    assert_eq!(spbench(&["explain", "--data", TEMPORAL, "--triple", base]).status.code(), Some(1));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(spbench(&[]).status.code(), Some(2));
    assert_eq!(spbench(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(spbench(&["query", "--data", TEMPORAL]).status.code(), Some(2));
    assert_eq!(spbench(&["materialize", TEMPORAL, "--strategy", "lazy"]).status.code(), Some(2));
    assert_eq!(spbench(&["--help"]).status.code(), Some(0));
}

fn generated(dir: &Path) -> PathBuf {
    let o = spbench(&["generate", "--universities", "1", "--seed", "5", "--out", path(dir)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["seed"], 5);
    dir.to_owned()
}

#[test]
fn generate_audit_and_tamper() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = generated(tmp.path());
    let o = spbench(&["audit", "--dir", path(&dir)]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("ok")).count(), 6);

    let sp = dir.join("sp.nt");
    let text = std::fs::read_to_string(&sp).unwrap();
    std::fs::write(&sp, text.lines().skip(3).collect::<Vec<_>>().join("\n")).unwrap();
    let o = spbench(&["audit", "--dir", path(&dir)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn generate_from_config_is_deterministic() {
    let tmp = tempfile::tempdir().unwrap();
    let config = tmp.path().join("gen.toml");
    std::fs::write(&config, "seed = 9\n[[sp_relations]]\nrelation = \"advisor\"\narity = 1\n").unwrap();
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    for out in [&a, &b] {
        let o = spbench(&["generate", "--config", path(&config), "--out", path(out)]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    for f in ["plain.nt", "sp.nt", "report.json"] {
        assert_eq!(std::fs::read(a.join(f)).unwrap(), std::fs::read(b.join(f)).unwrap(), "{f}");
    }
    let report: serde_json::Value = serde_json::from_slice(&std::fs::read(a.join("report.json")).unwrap()).unwrap();
    assert_eq!(report["relation_counts"].as_object().unwrap().len(), 1);

    let o = spbench(&["generate", "--relations", "name:1", "--out", path(&a)]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bench_writes_csv() {
    let tmp = tempfile::tempdir().unwrap();
    let dir = generated(tmp.path());
    let queries = tmp.path().join("queries");
    std::fs::create_dir(&queries).unwrap();
    std::fs::write(queries.join("a.rq"), "PREFIX ub: <http://swat.cse.lehigh.edu/onto/univ-bench.owl#>\nSELECT ?x WHERE { ?x ub:worksFor ?d }").unwrap();
    let csv = tmp.path().join("out.csv");
    let o = spbench(&["bench", "--dir", path(&dir), "--queries", path(&queries), "--runs", "2", "--csv", path(&csv)]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], "phase,dataset,mode,query,run,wall_ms,result_count,status");
    // per mode: load, materialize, two runs and a mean
    assert_eq!(lines.len(), 1 + 2 * 5);
    let counts: Vec<_> = lines.iter().filter(|l| l.contains(",a,mean,")).map(|l| l.split(',').nth(6).unwrap()).collect();
    assert_eq!(counts.len(), 2);
    assert_eq!(counts[0], counts[1]);
}
