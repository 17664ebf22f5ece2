//! Ontology loading, concept matching and domain keyword extraction.

mod graph;
mod keywords;
mod matching;
pub mod turtle;

use thiserror::Error;

pub use graph::{Concept, ConceptGraph, ConceptId, ConceptKind};
pub use keywords::{extract_domain_keywords, DomainKeyword, DomainKeywordSet, KeywordOptions, Relation};
pub use matching::{match_concepts, match_concepts_with_forms, ConceptMatch, MatchKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OntologyError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}, column {column}: undeclared prefix `{prefix}:`")]
    UndeclaredPrefix { prefix: String, line: usize, column: usize },
    #[error("subclass cycle: {}", .0.join(" -> "))]
    Cycle(Vec<String>),
}
