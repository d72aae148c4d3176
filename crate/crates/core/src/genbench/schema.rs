//! A university ontology in the style of univ-bench, reduced to what RDFS can
//! express: class and property hierarchies plus domains and ranges.

use crate::term::Term;
use crate::vocab::{RDFS_DOMAIN, RDFS_RANGE, RDFS_SUB_CLASS_OF, RDFS_SUB_PROPERTY_OF, RDF_PROPERTY, RDF_TYPE, RDFS_CLASS};

pub const UB: &str = "http://swat.cse.lehigh.edu/onto/univ-bench.owl#";

/// Temporal meta properties attached to singleton properties.
pub const FROM: &str = "http://example.org/from";
pub const TO: &str = "http://example.org/to";

/// The object relations of the ontology. Singleton relations must be drawn
/// from this list.
pub const OBJECT_RELATIONS: [&str; 17] = [
    "advisor",
    "affiliatedOrganizationOf",
    "degreeFrom",
    "doctoralDegreeFrom",
    "hasAlumnus",
    "headOf",
    "mastersDegreeFrom",
    "member",
    "memberOf",
    "orgPublication",
    "publicationAuthor",
    "subOrganizationOf",
    "takesCourse",
    "teacherOf",
    "teachingAssistantOf",
    "undergraduateDegreeFrom",
    "worksFor",
];

pub const DATATYPE_PROPERTIES: [&str; 4] = ["name", "emailAddress", "telephone", "researchInterest"];

const SUBCLASSES: &[(&str, &str)] = &[
    ("University", "Organization"),
    ("Department", "Organization"),
    ("ResearchGroup", "Organization"),
    ("Employee", "Person"),
    ("Faculty", "Employee"),
    ("Professor", "Faculty"),
    ("FullProfessor", "Professor"),
    ("AssociateProfessor", "Professor"),
    ("AssistantProfessor", "Professor"),
    ("Chair", "Professor"),
    ("Lecturer", "Faculty"),
    ("Student", "Person"),
    ("UndergraduateStudent", "Student"),
    // graduate students are students only by an OWL restriction
    ("GraduateStudent", "Person"),
    ("TeachingAssistant", "Person"),
    ("Course", "Work"),
    ("GraduateCourse", "Course"),
    ("Publication", "Work"),
];

const SUBPROPERTIES: &[(&str, &str)] = &[
    ("headOf", "worksFor"),
    ("worksFor", "memberOf"),
    ("undergraduateDegreeFrom", "degreeFrom"),
    ("mastersDegreeFrom", "degreeFrom"),
    ("doctoralDegreeFrom", "degreeFrom"),
];

const DOMAINS: &[(&str, &str)] = &[
    ("advisor", "Person"),
    ("affiliatedOrganizationOf", "Organization"),
    ("degreeFrom", "Person"),
    ("hasAlumnus", "University"),
    ("worksFor", "Employee"),
    ("memberOf", "Person"),
    ("member", "Organization"),
    ("orgPublication", "Organization"),
    ("publicationAuthor", "Publication"),
    ("subOrganizationOf", "Organization"),
    ("teacherOf", "Faculty"),
    ("teachingAssistantOf", "TeachingAssistant"),
];

const RANGES: &[(&str, &str)] = &[
    ("advisor", "Professor"),
    ("affiliatedOrganizationOf", "Organization"),
    ("degreeFrom", "University"),
    ("hasAlumnus", "Person"),
    ("worksFor", "Organization"),
    ("memberOf", "Organization"),
    ("member", "Person"),
    ("orgPublication", "Publication"),
    ("publicationAuthor", "Person"),
    ("subOrganizationOf", "Organization"),
    ("takesCourse", "Course"),
    ("teacherOf", "Course"),
    ("teachingAssistantOf", "Course"),
];

pub fn ub(local: &str) -> String {
    format!("{UB}{local}")
}

pub fn ub_term(local: &str) -> Term {
    Term::iri(ub(local))
}

/// Resolves a relation given as a local name or a full IRI against the
/// object relations. `None` if it is not one of them.
pub fn object_relation_iri(name: &str) -> Option<String> {
    let local = name.strip_prefix(UB).unwrap_or(name);
    OBJECT_RELATIONS.contains(&local).then(|| ub(local))
}

pub fn schema_triples() -> Vec<(Term, Term, Term)> {
    let iri = |s: &str| Term::iri(s);
    let mut out = Vec::new();
    let mut classes: Vec<&str> = Vec::new();
    for &(sub, sup) in SUBCLASSES {
        for c in [sub, sup] {
            if !classes.contains(&c) {
                classes.push(c);
            }
        }
    }
    for c in &classes {
        out.push((ub_term(c), iri(RDF_TYPE), iri(RDFS_CLASS)));
    }
    for p in OBJECT_RELATIONS.iter().chain(&DATATYPE_PROPERTIES) {
        out.push((ub_term(p), iri(RDF_TYPE), iri(RDF_PROPERTY)));
    }
    for &(sub, sup) in SUBCLASSES {
        out.push((ub_term(sub), iri(RDFS_SUB_CLASS_OF), ub_term(sup)));
    }
    for &(sub, sup) in SUBPROPERTIES {
        out.push((ub_term(sub), iri(RDFS_SUB_PROPERTY_OF), ub_term(sup)));
    }
    for &(p, c) in DOMAINS {
        out.push((ub_term(p), iri(RDFS_DOMAIN), ub_term(c)));
    }
    for &(p, c) in RANGES {
        out.push((ub_term(p), iri(RDFS_RANGE), ub_term(c)));
    }
    out
}
