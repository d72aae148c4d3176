//! Paired dataset generation and the benchmark harness.

mod audit;
mod bench;
mod config;
mod generator;
mod queries;
pub mod schema;

pub use audit::{audit, audit_dir, AuditReport};
pub use bench::{
    compare_modes, run_bench, BenchOptions, BenchReport, BenchRow, DataSource, ModeComparison, Phase, Run,
    Status, StoreMode, CSV_HEADER,
};
pub use config::{default_sp_relations, ConfigError, GenConfig, SpRelation};
pub use generator::{
    department_iri, generate, university_iri, GenError, GenReport, Generated, PLAIN_FILE, REPORT_FILE, SP_FILE,
};
pub use queries::{data_queries, default_queries, load_query_dir, mixed_queries, BenchQuery};
