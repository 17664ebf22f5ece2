//! Relevance filtering, keyword-coverage scoring and reciprocal rank fusion.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::backend::SearchResult;
use crate::ontology::DomainKeywordSet;
use crate::text::lemmas;

/// Weights of the score components.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ScoreWeights {
    pub rrf: f64,
    pub title: f64,
    pub snippet: f64,
    pub url: f64,
    pub phrase: f64,
}

impl Default for ScoreWeights {
    fn default() -> Self {
        Self {
            rrf: 0.4,
            title: 0.25,
            snippet: 0.2,
            url: 0.05,
            phrase: 0.1,
        }
    }
}

impl ScoreWeights {
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            rrf: self.rrf * factor,
            title: self.title * factor,
            snippet: self.snippet * factor,
            url: self.url * factor,
            phrase: self.phrase * factor,
        }
    }

    /// Name of the first negative or non-finite weight.
    pub fn invalid(&self) -> Option<&'static str> {
        [
            ("rrf", self.rrf),
            ("title", self.title),
            ("snippet", self.snippet),
            ("url", self.url),
            ("phrase", self.phrase),
        ]
        .into_iter()
        .find(|(_, w)| !w.is_finite() || *w < 0.0)
        .map(|(name, _)| name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScoreBreakdown {
    pub rrf: f64,
    #[serde(rename = "title")]
    pub cov_title: f64,
    #[serde(rename = "snippet")]
    pub cov_snippet: f64,
    #[serde(rename = "url")]
    pub cov_url: f64,
    #[serde(rename = "phrase")]
    pub np_bonus: f64,
    #[serde(skip)]
    pub total: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedResult {
    #[serde(rename = "rank")]
    pub final_rank: usize,
    pub url: String,
    pub title: String,
    pub snippet: String,
    #[serde(rename = "score")]
    pub total: f64,
    pub breakdown: ScoreBreakdown,
}

/// Lowercases scheme and host, drops default ports, fragments and a
/// trailing slash; keeps the query string. Unparseable input comes back
/// trimmed.
pub fn normalize_url(raw: &str) -> String {
    let trimmed = raw.trim();
    let Ok(mut url) = url::Url::parse(trimmed) else {
        return trimmed.to_string();
    };
    url.set_fragment(None);
    if url.cannot_be_a_base() {
        return url.to_string();
    }
    let mut out = format!("{}://", url.scheme());
    if !url.username().is_empty() {
        out.push_str(url.username());
        if let Some(p) = url.password() {
            out.push(':');
            out.push_str(p);
        }
        out.push('@');
    }
    out.push_str(url.host_str().unwrap_or(""));
    if let Some(port) = url.port() {
        out.push_str(&format!(":{port}"));
    }
    out.push_str(url.path().trim_end_matches('/'));
    if let Some(q) = url.query() {
        out.push('?');
        out.push_str(q);
    }
    out
}

fn contains_seq(haystack: &[String], needle: &[String]) -> bool {
    !needle.is_empty() && haystack.windows(needle.len()).any(|w| w == needle)
}

fn url_tokens(url: &str) -> Vec<String> {
    url.to_lowercase()
        .split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect()
}

/// Keywords as token sequences with their weights, in key order.
fn keyword_tokens(keywords: &DomainKeywordSet) -> Vec<(Vec<String>, f64)> {
    keywords.iter().map(|(k, e)| (lemmas(k), e.weight)).collect()
}

/// Keeps results whose title and snippet contain at least `theta` distinct
/// keywords that are not made only of anchor terms. When fewer than
/// `k_min` pass, the best-ranked rejected results (by backend rank, then
/// input position) are put back. Input order is preserved.
pub fn filter_results(
    results: &[SearchResult],
    keywords: &DomainKeywordSet,
    anchors: &[String],
    theta: usize,
    k_min: usize,
) -> Vec<SearchResult> {
    let candidates: Vec<Vec<String>> = keyword_tokens(keywords)
        .into_iter()
        .map(|(t, _)| t)
        .filter(|t| !t.iter().all(|w| anchors.contains(w)))
        .collect();
    let mut keep: Vec<bool> = results
        .iter()
        .map(|r| {
            let text = lemmas(&format!("{} {}", r.title, r.snippet));
            candidates.iter().filter(|k| contains_seq(&text, k)).count() >= theta
        })
        .collect();
    let kept = keep.iter().filter(|k| **k).count();
    if kept < k_min {
        let mut rejected: Vec<usize> = (0..results.len()).filter(|i| !keep[*i]).collect();
        rejected.sort_by_key(|i| (results[*i].backend_rank, *i));
        for i in rejected.into_iter().take(k_min - kept) {
            keep[i] = true;
        }
    }
    results
        .iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(r, _)| r.clone())
        .collect()
}

/// Scores one result. `phrases` are the query's noun phrases as lemma
/// lists; `rrf` is the normalized fusion score (0 when scoring alone).
pub fn score_result(
    result: &SearchResult,
    keywords: &DomainKeywordSet,
    phrases: &[Vec<String>],
    weights: &ScoreWeights,
    rrf: f64,
) -> ScoreBreakdown {
    let kws = keyword_tokens(keywords);
    let total_weight: f64 = kws.iter().map(|(_, w)| w).fold(0.0, |a, w| a + w);
    let title = lemmas(&result.title);
    let snippet = lemmas(&result.snippet);
    let url = url_tokens(&result.url);
    let coverage = |field: &[String]| -> f64 {
        if total_weight <= 0.0 {
            return 0.0;
        }
        let hit: f64 = kws
            .iter()
            .filter(|(k, _)| contains_seq(field, k))
            .map(|(_, w)| w)
            .fold(0.0, |a, w| a + w);
        hit / total_weight
    };
    let np_bonus = if phrases.is_empty() {
        0.0
    } else {
        phrases
            .iter()
            .filter(|p| contains_seq(&title, p) || contains_seq(&snippet, p))
            .count() as f64
            / phrases.len() as f64
    };
    let (cov_title, cov_snippet, cov_url) = (coverage(&title), coverage(&snippet), coverage(&url));
    let total = weights.rrf * rrf
        + weights.title * cov_title
        + weights.snippet * cov_snippet
        + weights.url * cov_url
        + weights.phrase * np_bonus;
    ScoreBreakdown {
        rrf,
        cov_title,
        cov_snippet,
        cov_url,
        np_bonus,
        total,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FusionOptions {
    pub rrf_k: f64,
    pub k_out: usize,
}

impl Default for FusionOptions {
    fn default() -> Self {
        Self { rrf_k: 60.0, k_out: 20 }
    }
}

/// Sum of 1 / (c + rank) over the given ranks.
pub fn raw_rrf(ranks: &[usize], c: f64) -> f64 {
    ranks.iter().map(|r| 1.0 / (c + *r as f64)).fold(0.0, |a, x| a + x)
}

/// Merges the result lists of all refined queries: duplicates (by
/// normalized url) are merged keeping the longest snippet, reciprocal rank
/// fusion scores are normalized by their maximum, each result is scored and
/// the list is sorted by total (ties by url) and cut to `k_out`. The output
/// does not depend on the order of `lists`.
pub fn fuse_and_rank(
    lists: &[Vec<SearchResult>],
    keywords: &DomainKeywordSet,
    phrases: &[Vec<String>],
    weights: &ScoreWeights,
    options: &FusionOptions,
) -> Vec<RankedResult> {
    struct Merged<'a> {
        best: &'a SearchResult,
        ranks: BTreeMap<usize, usize>,
    }
    let better = |a: &SearchResult, b: &SearchResult| {
        (
            b.snippet.len(),
            std::cmp::Reverse(b.query_id),
            std::cmp::Reverse(b.backend_rank),
            &b.url,
        ) > (
            a.snippet.len(),
            std::cmp::Reverse(a.query_id),
            std::cmp::Reverse(a.backend_rank),
            &a.url,
        )
    };
    let mut merged: BTreeMap<String, Merged> = BTreeMap::new();
    for r in lists.iter().flatten() {
        let key = normalize_url(&r.url);
        if key.is_empty() {
            continue;
        }
        let m = merged.entry(key).or_insert(Merged {
            best: r,
            ranks: BTreeMap::new(),
        });
        if better(m.best, r) {
            m.best = r;
        }
        let rank = m.ranks.entry(r.query_id).or_insert(r.backend_rank);
        *rank = (*rank).min(r.backend_rank);
    }
    let raw: Vec<f64> = merged
        .values()
        .map(|m| raw_rrf(&m.ranks.values().copied().collect::<Vec<_>>(), options.rrf_k))
        .collect();
    let max = raw.iter().copied().fold(0.0, f64::max);
    let mut ranked: Vec<RankedResult> = merged
        .into_iter()
        .zip(raw)
        .map(|((url, m), raw)| {
            let rrf = if max > 0.0 { raw / max } else { 0.0 };
            let breakdown = score_result(m.best, keywords, phrases, weights, rrf);
            RankedResult {
                final_rank: 0,
                url,
                title: m.best.title.clone(),
                snippet: m.best.snippet.clone(),
                total: breakdown.total,
                breakdown,
            }
        })
        .collect();
    ranked.sort_by(|a, b| b.total.total_cmp(&a.total).then_with(|| a.url.cmp(&b.url)));
    ranked.truncate(options.k_out);
    for (i, r) in ranked.iter_mut().enumerate() {
        r.final_rank = i + 1;
    }
    ranked
}

/// Whether no two results share a normalized url.
pub fn unique_urls(results: &[RankedResult]) -> bool {
    let mut seen = HashSet::new();
    results.iter().all(|r| seen.insert(normalize_url(&r.url)))
}
