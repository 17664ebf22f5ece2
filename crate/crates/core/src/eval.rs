//! Precision and pooled relative recall of two systems over a query set.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::error::ParseError;
use crate::rank::normalize_url;

#[derive(Debug, Error, PartialEq)]
pub enum EvalError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("query {0}: no relevant links in the pooled judgments")]
    EmptyPool(String),
    #[error("no evaluation rows")]
    NoRows,
}

/// Ranked urls per query for one system.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunFile {
    pub system: String,
    queries: Vec<(String, Vec<String>)>,
}

impl RunFile {
    pub fn new(system: impl Into<String>) -> Self {
        Self {
            system: system.into(),
            queries: Vec::new(),
        }
    }

    /// Appends `url` to the query's list unless already present.
    pub fn push(&mut self, query: &str, url: &str) {
        let url = normalize_url(url);
        let pos = match self.queries.iter().position(|(q, _)| q == query) {
            Some(p) => p,
            None => {
                self.queries.push((query.to_string(), Vec::new()));
                self.queries.len() - 1
            }
        };
        let list = &mut self.queries[pos].1;
        if !list.contains(&url) {
            list.push(url);
        }
    }

    /// Parses `qid<TAB>rank<TAB>url` lines; `#` lines and blank lines are
    /// skipped. Urls are ordered by rank within each query.
    pub fn parse(system: &str, text: &str) -> Result<Self, ParseError> {
        let mut rows: Vec<(String, usize, usize, String)> = Vec::new();
        for (n, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            let [qid, rank, url] = fields[..] else {
                return Err(ParseError::new("run file", n + 1, "expected qid<TAB>rank<TAB>url"));
            };
            let rank: usize = rank
                .trim()
                .parse()
                .map_err(|_| ParseError::new("run file", n + 1, format!("bad rank `{rank}`")))?;
            rows.push((qid.trim().to_string(), rank, n, url.trim().to_string()));
        }
        let mut order: Vec<String> = Vec::new();
        for r in &rows {
            if !order.contains(&r.0) {
                order.push(r.0.clone());
            }
        }
        rows.sort_by_key(|r| (order.iter().position(|q| *q == r.0), r.1, r.2));
        let mut run = RunFile::new(system);
        for (qid, _, _, url) in rows {
            run.push(&qid, &url);
        }
        Ok(run)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (q, urls) in &self.queries {
            for (i, u) in urls.iter().enumerate() {
                let _ = writeln!(out, "{q}\t{}\t{u}", i + 1);
            }
        }
        out
    }

    pub fn retrieved(&self, query: &str) -> &[String] {
        self.queries
            .iter()
            .find(|(q, _)| q == query)
            .map(|(_, u)| u.as_slice())
            .unwrap_or(&[])
    }

    pub fn query_ids(&self) -> impl Iterator<Item = &str> {
        self.queries.iter().map(|(q, _)| q.as_str())
    }
}

/// Urls judged relevant, per query.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct JudgmentSet {
    queries: BTreeMap<String, BTreeSet<String>>,
    order: Vec<String>,
}

impl JudgmentSet {
    pub fn insert(&mut self, query: &str, url: &str) {
        if !self.queries.contains_key(query) {
            self.order.push(query.to_string());
        }
        self.queries
            .entry(query.to_string())
            .or_default()
            .insert(normalize_url(url));
    }

    /// Parses `qid<TAB>url` lines.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut set = JudgmentSet::default();
        for (n, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((q, url)) = line.split_once('\t') else {
                return Err(ParseError::new("judgments", n + 1, "expected qid<TAB>url"));
            };
            set.insert(q.trim(), url.trim());
        }
        Ok(set)
    }

    pub fn relevant(&self, query: &str) -> Option<&BTreeSet<String>> {
        self.queries.get(query)
    }

    pub fn query_ids(&self) -> impl Iterator<Item = &str> {
        self.order.iter().map(String::as_str)
    }
}

/// Share of retrieved urls that are relevant; 0 for an empty retrieval.
pub fn precision(retrieved: &[String], relevant: &BTreeSet<String>) -> f64 {
    let distinct: HashSet<&String> = retrieved.iter().collect();
    if distinct.is_empty() {
        return 0.0;
    }
    distinct.iter().filter(|u| relevant.contains(**u)).count() as f64 / distinct.len() as f64
}

/// Share of the pooled relevant set that the system retrieved.
pub fn relative_recall(retrieved: &[String], pool: &BTreeSet<String>) -> Option<f64> {
    if pool.is_empty() {
        return None;
    }
    let distinct: HashSet<&String> = retrieved.iter().collect();
    Some(pool.iter().filter(|u| distinct.contains(u)).count() as f64 / pool.len() as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalRow {
    pub query: String,
    pub system: String,
    pub precision: f64,
    pub recall: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SystemAverage {
    pub system: String,
    pub precision: f64,
    pub recall: f64,
    pub queries: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlotSeries {
    pub system: String,
    /// (recall, precision) per query, in query order.
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub rows: Vec<EvalRow>,
    pub averages: Vec<SystemAverage>,
}

impl EvalReport {
    pub fn average(&self, system: &str) -> Option<&SystemAverage> {
        self.averages.iter().find(|a| a.system == system)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("query,system,precision,recall\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                csv_field(&r.query),
                csv_field(&r.system),
                r.precision,
                r.recall
            );
        }
        out
    }

    /// Precision/recall points of the first `n` queries of each system.
    pub fn plot_series(&self, n: usize) -> Vec<PlotSeries> {
        self.averages
            .iter()
            .map(|a| PlotSeries {
                system: a.system.clone(),
                points: self
                    .rows
                    .iter()
                    .filter(|r| r.system == a.system)
                    .take(n)
                    .map(|r| (r.recall, r.precision))
                    .collect(),
            })
            .collect()
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Arithmetic means per system, systems in order of first appearance.
pub fn summarize(rows: Vec<EvalRow>) -> Result<EvalReport, EvalError> {
    if rows.is_empty() {
        return Err(EvalError::NoRows);
    }
    let mut systems: Vec<String> = Vec::new();
    for r in &rows {
        if !systems.contains(&r.system) {
            systems.push(r.system.clone());
        }
    }
    let averages = systems
        .into_iter()
        .map(|system| {
            let mine: Vec<&EvalRow> = rows.iter().filter(|r| r.system == system).collect();
            let n = mine.len() as f64;
            SystemAverage {
                precision: mine.iter().map(|r| r.precision).sum::<f64>() / n,
                recall: mine.iter().map(|r| r.recall).sum::<f64>() / n,
                queries: mine.len(),
                system,
            }
        })
        .collect();
    Ok(EvalReport { rows, averages })
}

/// Rows for both systems over every judged query. The relevant pool of a
/// query is the judged-relevant urls retrieved by either system.
pub fn evaluate(run_a: &RunFile, run_b: &RunFile, judgments: &JudgmentSet) -> Result<Vec<EvalRow>, EvalError> {
    let mut queries: Vec<&str> = judgments.query_ids().collect();
    for q in run_a.query_ids().chain(run_b.query_ids()) {
        if !queries.contains(&q) {
            queries.push(q);
        }
    }
    let empty = BTreeSet::new();
    let mut a_rows = Vec::new();
    let mut b_rows = Vec::new();
    for q in queries {
        let judged = judgments.relevant(q).unwrap_or(&empty);
        let (a, b) = (run_a.retrieved(q), run_b.retrieved(q));
        let pool: BTreeSet<String> = a.iter().chain(b).filter(|u| judged.contains(*u)).cloned().collect();
        let row = |run: &RunFile, retrieved: &[String]| -> Result<EvalRow, EvalError> {
            Ok(EvalRow {
                query: q.to_string(),
                system: run.system.clone(),
                precision: precision(retrieved, judged),
                recall: relative_recall(retrieved, &pool).ok_or_else(|| EvalError::EmptyPool(q.to_string()))?,
            })
        };
        a_rows.push(row(run_a, a)?);
        b_rows.push(row(run_b, b)?);
    }
    a_rows.extend(b_rows);
    Ok(a_rows)
}

/// Reads per-query scores from a table with header
/// `query<TAB><system>_precision<TAB><system>_recall...` (the header may
/// start with `#`). Rows come out grouped by system, in column order.
pub fn parse_score_table(text: &str) -> Result<Vec<EvalRow>, ParseError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let Some((hn, header)) = lines.next() else {
        return Ok(Vec::new());
    };
    let columns: Vec<&str> = header.trim_start_matches('#').split('\t').map(str::trim).collect();
    let mut systems: Vec<(String, Option<usize>, Option<usize>)> = Vec::new();
    for (i, c) in columns.iter().enumerate().skip(1) {
        let (name, is_precision) = if let Some(n) = c.strip_suffix("_precision") {
            (n, true)
        } else if let Some(n) = c.strip_suffix("_recall") {
            (n, false)
        } else {
            return Err(ParseError::new(
                "score table",
                hn + 1,
                format!("unexpected column `{c}`"),
            ));
        };
        let pos = match systems.iter().position(|s| s.0 == name) {
            Some(p) => p,
            None => {
                systems.push((name.to_string(), None, None));
                systems.len() - 1
            }
        };
        if is_precision {
            systems[pos].1 = Some(i);
        } else {
            systems[pos].2 = Some(i);
        }
    }
    let mut per_system: Vec<Vec<EvalRow>> = vec![Vec::new(); systems.len()];
    for (n, line) in lines {
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != columns.len() {
            return Err(ParseError::new(
                "score table",
                n + 1,
                format!("expected {} fields", columns.len()),
            ));
        }
        let value = |i: Option<usize>| -> Result<f64, ParseError> {
            let Some(i) = i else {
                return Err(ParseError::new(
                    "score table",
                    hn + 1,
                    "system lacks a precision or recall column",
                ));
            };
            fields[i]
                .trim()
                .parse()
                .map_err(|_| ParseError::new("score table", n + 1, format!("bad number `{}`", fields[i])))
        };
        for (k, (system, p, r)) in systems.iter().enumerate() {
            per_system[k].push(EvalRow {
                query: fields[0].trim().to_string(),
                system: system.clone(),
                precision: value(*p)?,
                recall: value(*r)?,
            });
        }
    }
    Ok(per_system.into_iter().flatten().collect())
}
