//! Semantic search over a university domain: query analysis, lexical and
//! ontology-driven expansion, refined-query generation, retrieval, fusion
//! and evaluation.

pub mod backend;
pub mod bundled;
pub mod config;
pub mod engine;
pub mod error;
pub mod eval;
pub mod lexicon;
pub mod ontology;
pub mod rank;
pub mod refine;
pub mod server;
pub mod text;

pub use config::Config;
pub use engine::{Engine, EngineError, SearchResponse};
pub use error::ParseError;
