//! Workbench around `mobdb-core`: data generation, ingestion, the benchmark
//! queries, an expression evaluator and the `mobdb` command line.

pub mod bench;
pub mod error;
pub mod eval;
pub mod experiment;
pub mod geojson;
pub mod ingest;
pub mod queries;
pub mod store;
pub mod synth;
pub mod table;

pub use error::{Result, WorkbenchError};
