use std::collections::HashSet;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::schema::object_relation_iri;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpRelation {
    /// Local name in the ontology namespace, or a full IRI.
    pub relation: String,
    /// Number of temporal meta properties: 1 (`from`) or 2 (`from`, `to`).
    pub arity: u8,
}

impl SpRelation {
    pub fn new(relation: &str, arity: u8) -> Self {
        SpRelation {
            relation: relation.to_owned(),
            arity,
        }
    }
}

pub fn default_sp_relations() -> Vec<SpRelation> {
    [
        ("worksFor", 2),
        ("memberOf", 2),
        ("headOf", 2),
        ("takesCourse", 2),
        ("teacherOf", 2),
        ("advisor", 1),
        ("teachingAssistantOf", 1),
        ("undergraduateDegreeFrom", 1),
        ("mastersDegreeFrom", 1),
        ("doctoralDegreeFrom", 1),
    ]
    .into_iter()
    .map(|(r, a)| SpRelation::new(r, a))
    .collect()
}

/// Generator settings. Loadable from TOML:
///
/// ```toml
/// universities = 2
/// seed = 7
/// emit_data_triples = false
///
/// [[sp_relations]]
/// relation = "worksFor"
/// arity = 2
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GenConfig {
    pub universities: u32,
    pub seed: u64,
    pub sp_relations: Vec<SpRelation>,
    /// Also put each reified data triple into the singleton file.
    pub emit_data_triples: bool,
    pub out_dir: Option<PathBuf>,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            universities: 1,
            seed: 0,
            sp_relations: default_sp_relations(),
            emit_data_triples: false,
            out_dir: None,
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("universities must be at least 1")]
    NoUniversities,
    #[error("{0:?} is not an object relation of the ontology")]
    UnknownRelation(String),
    #[error("relation {relation:?} has arity {arity}; expected 1 or 2")]
    BadArity { relation: String, arity: u8 },
    #[error("relation {0:?} listed twice")]
    DuplicateRelation(String),
    #[error("config file: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("reading config {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl GenConfig {
    pub fn from_toml_str(text: &str) -> Result<Self, ConfigError> {
        let config: GenConfig = toml::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.to_owned(),
            source,
        })?;
        Self::from_toml_str(&text)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.resolved_relations().map(|_| ())
    }

    /// `(relation IRI, arity)` pairs, validated.
    pub fn resolved_relations(&self) -> Result<Vec<(String, u8)>, ConfigError> {
        if self.universities == 0 {
            return Err(ConfigError::NoUniversities);
        }
        let mut seen = HashSet::new();
        let mut out = Vec::with_capacity(self.sp_relations.len());
        for r in &self.sp_relations {
            let iri = object_relation_iri(&r.relation).ok_or_else(|| ConfigError::UnknownRelation(r.relation.clone()))?;
            if !(1..=2).contains(&r.arity) {
                return Err(ConfigError::BadArity {
                    relation: r.relation.clone(),
                    arity: r.arity,
                });
            }
            if !seen.insert(iri.clone()) {
                return Err(ConfigError::DuplicateRelation(r.relation.clone()));
            }
            out.push((iri, r.arity));
        }
        Ok(out)
    }
}
