//! Search backends: an offline BM25 corpus and a JSON-over-HTTP client.

mod corpus;
mod html;
mod live;

use serde::Serialize;
use thiserror::Error;

pub use corpus::{bm25_idf, bm25_term, CorpusDocument, CorpusError, CorpusIndex, StoredDocument, BM25_B, BM25_K1};
pub use html::{extract_page_meta, html_to_text, PageMeta};
pub use live::{LiveBackend, LiveConfig};

use crate::refine::RefinedQuery;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub url: String,
    pub title: String,
    pub snippet: String,
    /// 1-based position in the backend's answer.
    pub backend_rank: usize,
    pub query_id: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BackendErrorKind {
    #[error("network error: {0}")]
    Network(String),
    #[error("HTTP status {0}")]
    Status(u16),
    #[error("malformed response: {0}")]
    Decode(String),
}

impl BackendErrorKind {
    pub fn is_transient(&self) -> bool {
        match self {
            BackendErrorKind::Network(_) => true,
            BackendErrorKind::Status(code) => *code == 429 || *code >= 500,
            BackendErrorKind::Decode(_) => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("query {query_id}: {kind}")]
pub struct BackendError {
    pub query_id: usize,
    #[serde(serialize_with = "as_display")]
    pub kind: BackendErrorKind,
}

fn as_display<S: serde::Serializer>(kind: &BackendErrorKind, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(kind)
}

/// A search engine answering one refined query at a time. Implementations
/// are shared between threads.
pub trait SearchBackend: Send + Sync {
    fn name(&self) -> &str;

    /// At most `k` results ranked 1..=n.
    fn search(&self, query: &RefinedQuery, k: usize) -> Result<Vec<SearchResult>, BackendError>;

    /// Title and meta tags of a result page, or `None` when unavailable.
    fn page_meta(&self, _url: &str) -> Option<PageMeta> {
        None
    }
}
