use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::html::{extract_page_meta, html_to_text, PageMeta};
use super::{BackendError, SearchBackend, SearchResult};
use crate::refine::RefinedQuery;
use crate::text::lemmas;

pub const BM25_K1: f64 = 1.2;
pub const BM25_B: f64 = 0.75;
const SNIPPET_WORDS: usize = 30;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("duplicate document url {0}")]
    DuplicateUrl(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

/// A document to index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusDocument {
    pub url: String,
    pub title: String,
    pub body: String,
    /// Shown in results; defaults to the leading words of the body.
    pub snippet: Option<String>,
    pub meta_keywords: Vec<String>,
}

impl CorpusDocument {
    pub fn new(url: impl Into<String>, title: impl Into<String>, body: impl Into<String>) -> Self {
        Self {
            url: url.into(),
            title: title.into(),
            body: body.into(),
            snippet: None,
            meta_keywords: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StoredDocument {
    pub url: String,
    pub title: String,
    pub snippet: String,
    pub length: u32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub meta_keywords: Vec<String>,
}

/// Inverted index scored with BM25 (k1 = 1.2, b = 0.75,
/// idf = ln(1 + (N - df + 0.5) / (df + 0.5))).
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CorpusIndex {
    documents: Vec<StoredDocument>,
    /// term → (doc id, term frequency), doc ids ascending.
    postings: BTreeMap<String, Vec<(u32, u32)>>,
    avg_doc_length: f64,
}

#[derive(Debug, Deserialize)]
struct ManifestEntry {
    url: String,
    #[serde(default)]
    title: Option<String>,
    file: PathBuf,
}

impl CorpusIndex {
    /// Indexes title and body tokens of every document.
    pub fn build(docs: Vec<CorpusDocument>) -> Result<Self, CorpusError> {
        let mut seen = HashSet::new();
        let mut index = CorpusIndex::default();
        let mut total: u64 = 0;
        for (id, doc) in docs.into_iter().enumerate() {
            if !seen.insert(doc.url.clone()) {
                return Err(CorpusError::DuplicateUrl(doc.url));
            }
            let terms = lemmas(&format!("{} {}", doc.title, doc.body));
            let mut tf: BTreeMap<&str, u32> = BTreeMap::new();
            for t in &terms {
                *tf.entry(t.as_str()).or_default() += 1;
            }
            for (term, count) in tf {
                index
                    .postings
                    .entry(term.to_string())
                    .or_default()
                    .push((id as u32, count));
            }
            total += terms.len() as u64;
            let snippet = doc.snippet.filter(|s| !s.trim().is_empty()).unwrap_or_else(|| {
                doc.body
                    .split_whitespace()
                    .take(SNIPPET_WORDS)
                    .collect::<Vec<_>>()
                    .join(" ")
            });
            index.documents.push(StoredDocument {
                url: doc.url,
                title: doc.title,
                snippet,
                length: terms.len() as u32,
                meta_keywords: doc.meta_keywords,
            });
        }
        if !index.documents.is_empty() {
            index.avg_doc_length = total as f64 / index.documents.len() as f64;
        }
        Ok(index)
    }

    /// Reads a JSON manifest `[{"url", "title"?, "file"}]`; files are
    /// resolved against the manifest's directory. HTML files contribute
    /// their visible text, and their `<title>` and meta description when
    /// the manifest leaves them out.
    pub fn from_manifest(path: &Path) -> Result<Self, CorpusError> {
        let io = |source| CorpusError::Io {
            path: path.to_path_buf(),
            source,
        };
        let text = fs::read_to_string(path).map_err(io)?;
        let entries: Vec<ManifestEntry> = serde_json::from_str(&text).map_err(|source| CorpusError::Json {
            path: path.to_path_buf(),
            source,
        })?;
        let base = path.parent().unwrap_or(Path::new("."));
        let mut docs = Vec::with_capacity(entries.len());
        for entry in entries {
            let file = base.join(&entry.file);
            let raw = fs::read(&file).map_err(|source| CorpusError::Io {
                path: file.clone(),
                source,
            })?;
            let raw = String::from_utf8_lossy(&raw);
            let is_html = file
                .extension()
                .and_then(|e| e.to_str())
                .is_some_and(|e| e.eq_ignore_ascii_case("html") || e.eq_ignore_ascii_case("htm"));
            let doc = if is_html {
                let meta = extract_page_meta(&raw);
                CorpusDocument {
                    url: entry.url,
                    title: entry.title.unwrap_or(meta.title),
                    body: html_to_text(&raw),
                    snippet: Some(meta.meta_description),
                    meta_keywords: meta.meta_keywords,
                }
            } else {
                CorpusDocument::new(entry.url, entry.title.unwrap_or_default(), raw.into_owned())
            };
            docs.push(doc);
        }
        Self::build(docs)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("index serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    pub fn document(&self, id: usize) -> &StoredDocument {
        &self.documents[id]
    }

    pub fn avg_doc_length(&self) -> f64 {
        self.avg_doc_length
    }

    pub fn postings(&self, term: &str) -> &[(u32, u32)] {
        self.postings.get(term).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn idf(&self, term: &str) -> f64 {
        bm25_idf(self.documents.len(), self.postings(term).len())
    }

    /// BM25 scores of every document matching any distinct word of
    /// `query`, best first; ties go to the lower doc id.
    pub fn score(&self, query: &str) -> Vec<(usize, f64)> {
        let mut words = lemmas(query);
        words.sort();
        words.dedup();
        let mut scores: BTreeMap<u32, f64> = BTreeMap::new();
        for w in &words {
            let idf = self.idf(w);
            for &(doc, tf) in self.postings(w) {
                let len = self.documents[doc as usize].length as f64;
                *scores.entry(doc).or_default() += bm25_term(tf as f64, len, self.avg_doc_length, idf);
            }
        }
        let mut ranked: Vec<(usize, f64)> = scores.into_iter().map(|(d, s)| (d as usize, s)).collect();
        ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        ranked
    }

    pub fn top_k(&self, query: &str, k: usize) -> Vec<(usize, f64)> {
        let mut ranked = self.score(query);
        ranked.truncate(k);
        ranked
    }
}

pub fn bm25_idf(n: usize, df: usize) -> f64 {
    let (n, df) = (n as f64, df as f64);
    (1.0 + (n - df + 0.5) / (df + 0.5)).ln()
}

pub fn bm25_term(tf: f64, doc_len: f64, avg_len: f64, idf: f64) -> f64 {
    let norm = if avg_len > 0.0 { doc_len / avg_len } else { 0.0 };
    idf * tf * (BM25_K1 + 1.0) / (tf + BM25_K1 * (1.0 - BM25_B + BM25_B * norm))
}

impl SearchBackend for CorpusIndex {
    fn name(&self) -> &str {
        "corpus"
    }

    fn page_meta(&self, url: &str) -> Option<PageMeta> {
        let d = self.documents.iter().find(|d| d.url == url)?;
        Some(PageMeta {
            title: d.title.clone(),
            meta_keywords: d.meta_keywords.clone(),
            meta_description: d.snippet.clone(),
        })
    }

    fn search(&self, query: &RefinedQuery, k: usize) -> Result<Vec<SearchResult>, BackendError> {
        Ok(self
            .top_k(&query.text(), k)
            .into_iter()
            .enumerate()
            .map(|(i, (doc, _))| {
                let d = &self.documents[doc];
                SearchResult {
                    url: d.url.clone(),
                    title: d.title.clone(),
                    snippet: d.snippet.clone(),
                    backend_rank: i + 1,
                    query_id: query.id,
                }
            })
            .collect())
    }
}
