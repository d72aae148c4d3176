use std::collections::{BTreeMap, HashMap, HashSet};
use std::fs;
use std::io;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::config::{ConfigError, GenConfig};
use super::schema::{schema_triples, ub, ub_term, FROM, TO};
use crate::ntriples::{write_ntriples, OriginFilter};
use crate::singleton::{install_vocabulary, reify, SingletonError, SingletonMinter, SpVocabulary};
use crate::store::{Origin, StoreError, Triple, TripleStore};
use crate::term::Term;
use crate::vocab::RDF_TYPE;

pub const PLAIN_FILE: &str = "plain.nt";
pub const SP_FILE: &str = "sp.nt";
pub const REPORT_FILE: &str = "report.json";

const DEPARTMENTS: RangeInclusive<usize> = 4..=6;
const FULL_PROFESSORS: RangeInclusive<usize> = 3..=5;
const ASSOCIATE_PROFESSORS: RangeInclusive<usize> = 4..=6;
const ASSISTANT_PROFESSORS: RangeInclusive<usize> = 3..=5;
const LECTURERS: RangeInclusive<usize> = 2..=3;
const UNDERGRADS_PER_FACULTY: RangeInclusive<usize> = 6..=10;
const GRADS_PER_FACULTY: RangeInclusive<usize> = 2..=3;
const RESEARCH_GROUPS: RangeInclusive<usize> = 2..=4;
const COURSES_PER_FACULTY: RangeInclusive<usize> = 1..=2;
const GRAD_COURSES_PER_FACULTY: RangeInclusive<usize> = 1..=2;
const UNDERGRAD_COURSES: RangeInclusive<usize> = 1..=3;
const GRAD_COURSES: RangeInclusive<usize> = 1..=3;
const PROFESSOR_PUBLICATIONS: RangeInclusive<usize> = 5..=10;
const LECTURER_PUBLICATIONS: RangeInclusive<usize> = 0..=2;
const UNDERGRAD_ADVISED: f64 = 0.2;
const GRAD_TEACHING_ASSISTANT: f64 = 0.25;
const GRAD_COAUTHOR: f64 = 0.3;
const RESEARCH_INTERESTS: RangeInclusive<usize> = 0..=29;
/// Degree-granting universities are drawn from at least this many.
const MIN_DEGREE_UNIVERSITIES: u32 = 10;
const YEARS: RangeInclusive<u32> = 1980..=2015;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenReport {
    pub plain_triple_count: usize,
    pub sp_triple_count: usize,
    /// Minted singleton properties.
    pub sp_count: usize,
    pub ratio: f64,
    pub schema_triple_count: usize,
    pub vocabulary_triple_count: usize,
    /// Instance triples per singleton relation IRI.
    pub relation_counts: BTreeMap<String, usize>,
    pub emit_data_triples: bool,
    pub universities: u32,
    pub seed: u64,
}

#[derive(Debug, Error)]
pub enum GenError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("writing {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Singleton(#[from] SingletonError),
    #[error(transparent)]
    Store(#[from] StoreError),
}

/// Both knowledge bases in memory plus their serialized, canonical form.
#[derive(Debug, Clone)]
pub struct Generated {
    pub plain: TripleStore,
    pub sp: TripleStore,
    pub plain_nt: String,
    pub sp_nt: String,
    pub report: GenReport,
}

struct Instance {
    triple: (Term, Term, Term),
    meta: Vec<(Term, Term)>,
}

struct Emitter<'a> {
    rng: ChaCha8Rng,
    temporal: &'a HashMap<String, u8>,
    seen: HashSet<(Term, Term, Term)>,
    out: Vec<Instance>,
}

impl Emitter<'_> {
    fn emit(&mut self, s: &str, p: &str, o: Term) {
        let triple = (Term::iri(s), ub_term(p), o);
        if !self.seen.insert(triple.clone()) {
            return;
        }
        let meta = match self.temporal.get(&ub(p)) {
            Some(&arity) => self.years(arity),
            None => Vec::new(),
        };
        self.out.push(Instance { triple, meta });
    }

    fn link(&mut self, s: &str, p: &str, o: &str) {
        self.emit(s, p, Term::iri(o));
    }

    fn typed(&mut self, s: &str, class: &str) {
        let triple = (Term::iri(s), Term::iri(RDF_TYPE), ub_term(class));
        if self.seen.insert(triple.clone()) {
            self.out.push(Instance { triple, meta: Vec::new() });
        }
    }

    fn text(&mut self, s: &str, p: &str, value: String) {
        self.emit(s, p, Term::literal(value));
    }

    fn years(&mut self, arity: u8) -> Vec<(Term, Term)> {
        let (lo, hi) = (*YEARS.start(), *YEARS.end());
        if arity == 1 {
            let y = self.rng.random_range(YEARS);
            return vec![(Term::iri(FROM), Term::literal(y.to_string()))];
        }
        let from = self.rng.random_range(lo..hi);
        let to = self.rng.random_range(from + 1..=hi);
        vec![
            (Term::iri(FROM), Term::literal(from.to_string())),
            (Term::iri(TO), Term::literal(to.to_string())),
        ]
    }

    fn count(&mut self, range: RangeInclusive<usize>) -> usize {
        self.rng.random_range(range)
    }

    fn pick<'b>(&mut self, items: &'b [String], amount: usize) -> Vec<&'b String> {
        let amount = amount.min(items.len());
        sample(&mut self.rng, items.len(), amount).into_iter().map(|i| &items[i]).collect()
    }
}

pub fn university_iri(u: u32) -> String {
    format!("http://www.University{u}.edu")
}

pub fn department_iri(u: u32, d: usize) -> String {
    format!("http://www.Department{d}.University{u}.edu")
}

fn contact(e: &mut Emitter<'_>, iri: &str, local: &str, dept: &str) {
    e.text(iri, "name", local.to_owned());
    let host = dept.trim_start_matches("http://www.");
    e.text(iri, "emailAddress", format!("{local}@{host}"));
    let phone = format!(
        "{:03}-{:03}-{:04}",
        e.rng.random_range(0..1000),
        e.rng.random_range(0..1000),
        e.rng.random_range(0..10000)
    );
    e.text(iri, "telephone", phone);
}

fn department(e: &mut Emitter<'_>, universities: u32, u: u32, d: usize) {
    let uni = university_iri(u);
    let dept = department_iri(u, d);
    let degree_pool = universities.max(MIN_DEGREE_UNIVERSITIES);
    let degree_uni = |e: &mut Emitter<'_>| university_iri(e.rng.random_range(0..degree_pool));

    e.typed(&dept, "Department");
    e.link(&dept, "subOrganizationOf", &uni);
    e.text(&dept, "name", format!("Department{d}"));

    let mut faculty: Vec<(String, &str)> = Vec::new();
    for (class, range) in [
        ("FullProfessor", FULL_PROFESSORS),
        ("AssociateProfessor", ASSOCIATE_PROFESSORS),
        ("AssistantProfessor", ASSISTANT_PROFESSORS),
        ("Lecturer", LECTURERS),
    ] {
        for i in 0..e.count(range) {
            faculty.push((format!("{class}{i}"), class));
        }
    }

    let mut courses = Vec::new();
    let mut grad_courses = Vec::new();
    let mut professors = Vec::new();
    let mut professor_publications = Vec::new();
    for (n, (local, class)) in faculty.iter().enumerate() {
        let iri = format!("{dept}/{local}");
        e.typed(&iri, class);
        contact(e, &iri, local, &dept);
        if n == 0 {
            e.link(&iri, "headOf", &dept);
        } else {
            e.link(&iri, "worksFor", &dept);
        }
        for degree in ["undergraduateDegreeFrom", "mastersDegreeFrom", "doctoralDegreeFrom"] {
            let u = degree_uni(e);
            e.link(&iri, degree, &u);
        }
        for _ in 0..e.count(COURSES_PER_FACULTY) {
            let c = format!("{dept}/Course{}", courses.len());
            e.typed(&c, "Course");
            e.text(&c, "name", format!("Course{}", courses.len()));
            e.link(&iri, "teacherOf", &c);
            courses.push(c);
        }
        for _ in 0..e.count(GRAD_COURSES_PER_FACULTY) {
            let c = format!("{dept}/GraduateCourse{}", grad_courses.len());
            e.typed(&c, "GraduateCourse");
            e.text(&c, "name", format!("GraduateCourse{}", grad_courses.len()));
            e.link(&iri, "teacherOf", &c);
            grad_courses.push(c);
        }
        let publications = if *class == "Lecturer" {
            e.count(LECTURER_PUBLICATIONS)
        } else {
            professors.push(iri.clone());
            let topic = e.count(RESEARCH_INTERESTS);
            e.text(&iri, "researchInterest", format!("Research{topic}"));
            e.count(PROFESSOR_PUBLICATIONS)
        };
        for j in 0..publications {
            let p = format!("{iri}/Publication{j}");
            e.typed(&p, "Publication");
            e.text(&p, "name", format!("Publication{j}"));
            e.link(&p, "publicationAuthor", &iri);
            if *class != "Lecturer" {
                professor_publications.push(p);
            }
        }
    }

    let undergrads: usize = (0..faculty.len()).map(|_| e.count(UNDERGRADS_PER_FACULTY)).sum();
    for i in 0..undergrads {
        let local = format!("UndergraduateStudent{i}");
        let iri = format!("{dept}/{local}");
        e.typed(&iri, "UndergraduateStudent");
        contact(e, &iri, &local, &dept);
        e.link(&iri, "memberOf", &dept);
        let n = e.count(UNDERGRAD_COURSES);
        for c in e.pick(&courses, n) {
            e.link(&iri, "takesCourse", c);
        }
        if e.rng.random_bool(UNDERGRAD_ADVISED) {
            let a = e.pick(&professors, 1)[0];
            e.link(&iri, "advisor", a);
        }
    }

    let grads: usize = (0..faculty.len()).map(|_| e.count(GRADS_PER_FACULTY)).sum();
    let mut grad_iris = Vec::with_capacity(grads);
    for i in 0..grads {
        let local = format!("GraduateStudent{i}");
        let iri = format!("{dept}/{local}");
        e.typed(&iri, "GraduateStudent");
        contact(e, &iri, &local, &dept);
        e.link(&iri, "memberOf", &dept);
        let u = degree_uni(e);
        e.link(&iri, "undergraduateDegreeFrom", &u);
        let n = e.count(GRAD_COURSES);
        for c in e.pick(&grad_courses, n) {
            e.link(&iri, "takesCourse", c);
        }
        let a = e.pick(&professors, 1)[0];
        e.link(&iri, "advisor", a);
        if e.rng.random_bool(GRAD_TEACHING_ASSISTANT) {
            e.typed(&iri, "TeachingAssistant");
            let c = e.pick(&courses, 1)[0];
            e.link(&iri, "teachingAssistantOf", c);
        }
        grad_iris.push(iri);
    }

    for p in &professor_publications {
        if !grad_iris.is_empty() && e.rng.random_bool(GRAD_COAUTHOR) {
            let g = e.pick(&grad_iris, 1)[0];
            e.link(p, "publicationAuthor", g);
        }
    }

    for i in 0..e.count(RESEARCH_GROUPS) {
        let g = format!("{dept}/ResearchGroup{i}");
        e.typed(&g, "ResearchGroup");
        e.link(&g, "subOrganizationOf", &dept);
    }
}

/// Builds the plain and the singleton-property knowledge bases for `config`.
/// Output depends only on `config`.
pub fn generate(config: &GenConfig) -> Result<Generated, GenError> {
    let relations = config.resolved_relations()?;
    let temporal: HashMap<String, u8> = relations.iter().cloned().collect();
    let mut e = Emitter {
        rng: ChaCha8Rng::seed_from_u64(config.seed),
        temporal: &temporal,
        seen: HashSet::new(),
        out: Vec::new(),
    };
    for u in 0..config.universities {
        let uni = university_iri(u);
        e.typed(&uni, "University");
        e.text(&uni, "name", format!("University{u}"));
        for d in 0..e.count(DEPARTMENTS) {
            department(&mut e, config.universities, u, d);
        }
    }
    let instances = e.out;

    let schema = schema_triples();
    let mut plain = TripleStore::new();
    let mut sp = TripleStore::new();
    let vocab = SpVocabulary::default();
    let vocabulary_triple_count = install_vocabulary(&mut sp, &vocab, true)?;
    for (s, p, o) in &schema {
        plain.insert_terms(s.clone(), p.clone(), o.clone(), Origin::Base)?;
        sp.insert_terms(s.clone(), p.clone(), o.clone(), Origin::Base)?;
    }

    let mut minter = SingletonMinter::default();
    let mut relation_counts: BTreeMap<String, usize> = relations.iter().map(|(r, _)| (r.clone(), 0)).collect();
    let mut sp_count = 0;
    for Instance { triple: (s, p, o), meta } in instances {
        plain.insert_terms(s.clone(), p.clone(), o.clone(), Origin::Base)?;
        match relation_counts.get_mut(p.as_iri().unwrap_or_default()) {
            Some(k) => {
                *k += 1;
                sp_count += 1;
                let data = Triple::new(sp.intern(s)?, sp.intern(p)?, sp.intern(o)?);
                let meta = meta
                    .into_iter()
                    .map(|(m, v)| Ok((sp.intern(m)?, sp.intern(v)?)))
                    .collect::<Result<Vec<_>, StoreError>>()?;
                reify(&mut sp, &vocab, data, &meta, &mut minter)?;
                if config.emit_data_triples {
                    sp.insert(data, Origin::Base)?;
                }
            }
            None => {
                sp.insert_terms(s, p, o, Origin::Base)?;
            }
        }
    }

    let report = GenReport {
        plain_triple_count: plain.len(),
        sp_triple_count: sp.len(),
        sp_count,
        ratio: sp.len() as f64 / plain.len() as f64,
        schema_triple_count: schema.len(),
        vocabulary_triple_count,
        relation_counts,
        emit_data_triples: config.emit_data_triples,
        universities: config.universities,
        seed: config.seed,
    };
    Ok(Generated {
        plain_nt: write_ntriples(&plain, OriginFilter::All),
        sp_nt: write_ntriples(&sp, OriginFilter::All),
        plain,
        sp,
        report,
    })
}

impl Generated {
    /// Writes `plain.nt`, `sp.nt` and `report.json` into `dir`, creating it.
    pub fn write_to(&self, dir: &Path) -> Result<(), GenError> {
        let io_err = |path: &Path| {
            let path = path.to_owned();
            move |source| GenError::Io { path, source }
        };
        fs::create_dir_all(dir).map_err(io_err(dir))?;
        let report = serde_json::to_string_pretty(&self.report).expect("report serializes") + "\n";
        for (name, body) in [(PLAIN_FILE, &self.plain_nt), (SP_FILE, &self.sp_nt), (REPORT_FILE, &report)] {
            let path = dir.join(name);
            fs::write(&path, body).map_err(io_err(&path))?;
        }
        Ok(())
    }
}
