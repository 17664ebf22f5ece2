//! The assembled pipeline: analysis, expansion, refinement, retrieval and
//! ranking over resources loaded once.

use std::collections::HashMap;
use std::fs;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::backend::{BackendError, CorpusError, CorpusIndex, LiveBackend, SearchBackend, SearchResult};
use crate::bundled;
use crate::config::{BackendKind, Config, PipelineParams};
use crate::lexicon::{Lexicon, LexiconError, WordNetPos};
use crate::ontology::{
    extract_domain_keywords, match_concepts_with_forms, ConceptGraph, ConceptMatch, DomainKeywordSet, KeywordOptions,
    OntologyError,
};
use crate::rank::{filter_results, fuse_and_rank, normalize_url, FusionOptions, RankedResult};
use crate::refine::{build_expansion_map, generate_refined_queries, ExpansionMap, ExpansionOptions, RefinedQuery};
use crate::text::{AnalyzedQuery, Analyzer, LocationTriggers, StopList, TagLexicon};

const PAGE_FETCH_THREADS: usize = 8;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("query is empty")]
    EmptyQuery,
    #[error("every backend request failed ({} errors, first: {})", .0.len(), .0.first().map(|e| e.to_string()).unwrap_or_default())]
    BackendUnavailable(Vec<BackendError>),
    #[error("lexicon: {0}")]
    Lexicon(#[from] LexiconError),
    #[error("ontology {path}: {source}")]
    Ontology { path: String, source: OntologyError },
    #[error("corpus: {0}")]
    Corpus(#[from] CorpusError),
    #[error("{0}")]
    Resource(String),
}

/// Analysis through refinement; everything except retrieval.
#[derive(Debug, Clone, Serialize)]
pub struct Expanded {
    pub query: String,
    pub analysis: AnalyzedQuery,
    pub matches: Vec<ConceptMatch>,
    pub keywords: DomainKeywordSet,
    pub expansions: ExpansionMap,
    pub refined_queries: Vec<RefinedQuery>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct Timings {
    pub analyze_ms: f64,
    pub expand_ms: f64,
    pub refine_ms: f64,
    pub search_ms: f64,
    pub rank_ms: f64,
    pub total_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchResponse {
    pub query: String,
    pub analysis: AnalyzedQuery,
    pub matches: Vec<ConceptMatch>,
    pub keywords: DomainKeywordSet,
    pub expansions: ExpansionMap,
    pub refined_queries: Vec<RefinedQuery>,
    pub results: Vec<RankedResult>,
    /// Refined queries whose backend request failed.
    pub failures: Vec<BackendError>,
    pub timings: Timings,
}

pub struct Engine {
    analyzer: Analyzer,
    lexicon: Lexicon,
    graph: ConceptGraph,
    backend: Box<dyn SearchBackend>,
    params: PipelineParams,
}

impl std::fmt::Debug for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Engine")
            .field("concepts", &self.graph.len())
            .field("backend", &self.backend.name())
            .field("params", &self.params)
            .finish()
    }
}

fn elapsed_ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1000.0
}

fn read(path: &std::path::Path) -> Result<String, EngineError> {
    fs::read_to_string(path).map_err(|e| EngineError::Resource(format!("{}: {e}", path.display())))
}

impl Engine {
    /// Engine over the bundled lexicon, ontology and fixture corpus.
    pub fn bundled() -> Result<Self, EngineError> {
        let index = CorpusIndex::from_manifest(&bundled::corpus_manifest())?;
        Ok(Self::with_backend(Box::new(index), PipelineParams::default()))
    }

    /// Bundled resources with a caller-supplied backend.
    pub fn with_backend(backend: Box<dyn SearchBackend>, params: PipelineParams) -> Self {
        Self::assemble(
            bundled::tag_lexicon(),
            bundled::stoplist(),
            bundled::wordnet(),
            bundled::ontology(),
            backend,
            params,
        )
    }

    fn assemble(
        tags: TagLexicon,
        stoplist: StopList,
        lexicon: Lexicon,
        graph: ConceptGraph,
        backend: Box<dyn SearchBackend>,
        params: PipelineParams,
    ) -> Self {
        let mut analyzer = Analyzer::new(tags, stoplist).with_entities(graph.individual_labels());
        if let Some(triggers) = &params.location_triggers {
            analyzer = analyzer.with_location_triggers(LocationTriggers::new(triggers));
        }
        Self {
            analyzer,
            lexicon,
            graph,
            backend,
            params,
        }
    }

    pub fn from_config(config: &Config) -> Result<Self, EngineError> {
        let paths = &config.paths;
        let tags = match &paths.tag_lexicon {
            Some(p) => TagLexicon::parse(&read(p)?).map_err(|e| EngineError::Resource(e.to_string()))?,
            None => bundled::tag_lexicon(),
        };
        let stoplist = match &paths.stoplist {
            Some(p) => StopList::parse(&read(p)?),
            None => bundled::stoplist(),
        };
        let lexicon = match &paths.wordnet {
            Some(dir) => Lexicon::load(dir)?,
            None => bundled::wordnet(),
        };
        let mut graph: Option<ConceptGraph> = None;
        for p in &paths.ontology {
            let parsed = ConceptGraph::parse(&read(p)?).map_err(|source| EngineError::Ontology {
                path: p.display().to_string(),
                source,
            })?;
            graph = Some(match graph {
                None => parsed,
                Some(g) => g.merge(&parsed).map_err(|source| EngineError::Ontology {
                    path: p.display().to_string(),
                    source,
                })?,
            });
        }
        let graph = graph.unwrap_or_else(bundled::ontology);
        let backend: Box<dyn SearchBackend> = match config.backend.kind {
            BackendKind::Live => Box::new(
                LiveBackend::new(config.backend.live.clone()).map_err(|e| EngineError::Resource(e.to_string()))?,
            ),
            BackendKind::Corpus => Box::new(match (&paths.corpus_index, &paths.corpus_manifest) {
                (Some(idx), _) => CorpusIndex::from_json(&read(idx)?)
                    .map_err(|e| EngineError::Resource(format!("{}: {e}", idx.display())))?,
                (None, Some(manifest)) => CorpusIndex::from_manifest(manifest)?,
                (None, None) => CorpusIndex::from_manifest(&bundled::corpus_manifest())?,
            }),
        };
        Ok(Self::assemble(
            tags,
            stoplist,
            lexicon,
            graph,
            backend,
            config.pipeline.clone(),
        ))
    }

    pub fn params(&self) -> &PipelineParams {
        &self.params
    }

    pub fn analyzer(&self) -> &Analyzer {
        &self.analyzer
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    pub fn graph(&self) -> &ConceptGraph {
        &self.graph
    }

    pub fn backend(&self) -> &dyn SearchBackend {
        self.backend.as_ref()
    }

    pub fn analyze(&self, raw: &str) -> AnalyzedQuery {
        self.analyzer.analyze(raw)
    }

    /// Concept matches of the analyzed query, with noun base forms as
    /// fallbacks for label lookup.
    pub fn match_concepts(&self, analyzed: &AnalyzedQuery) -> Vec<ConceptMatch> {
        match_concepts_with_forms(&analyzed.content_terms, &analyzed.content_phrases(), &self.graph, |t| {
            self.lexicon.base_forms(t, WordNetPos::Noun)
        })
    }

    pub fn domain_keywords(&self, matches: &[ConceptMatch]) -> DomainKeywordSet {
        extract_domain_keywords(
            matches,
            &self.graph,
            KeywordOptions {
                depth: self.params.depth,
                siblings: self.params.siblings,
            },
        )
    }

    fn expansion_options(&self) -> ExpansionOptions {
        ExpansionOptions {
            e_max: self.params.e_max,
            ontology_scale: self.params.ontology_scale,
            wordnet_weight: self.params.wordnet_weight,
            use_wordnet: self.params.use_wordnet,
        }
    }

    fn expand_timed(&self, raw: &str) -> Result<(Expanded, [f64; 3]), EngineError> {
        if raw.trim().is_empty() {
            return Err(EngineError::EmptyQuery);
        }
        let t = Instant::now();
        let analysis = self.analyze(raw);
        let analyze_ms = elapsed_ms(t);

        let t = Instant::now();
        let matches = self.match_concepts(&analysis);
        let mut keywords = self.domain_keywords(&matches);
        let expansions = build_expansion_map(&analysis, &self.lexicon, &matches, &keywords, &self.expansion_options());
        if analysis.is_location_query {
            keywords.add_location_terms(&analysis.location_terms);
        }
        let expand_ms = elapsed_ms(t);

        let t = Instant::now();
        let refined_queries = generate_refined_queries(&expansions, self.params.q_max);
        let refine_ms = elapsed_ms(t);
        Ok((
            Expanded {
                query: raw.to_string(),
                analysis,
                matches,
                keywords,
                expansions,
                refined_queries,
            },
            [analyze_ms, expand_ms, refine_ms],
        ))
    }

    /// Runs every stage up to refined-query generation.
    pub fn expand(&self, raw: &str) -> Result<Expanded, EngineError> {
        self.expand_timed(raw).map(|(e, _)| e)
    }

    /// Full pipeline. `k` overrides the per-query result count. Failed
    /// refined queries are reported in the response; if all of them fail
    /// the call fails.
    pub fn search(&self, raw: &str, k: Option<usize>) -> Result<SearchResponse, EngineError> {
        let start = Instant::now();
        let (expanded, [analyze_ms, expand_ms, refine_ms]) = self.expand_timed(raw)?;
        let k = k.unwrap_or(self.params.k).max(1);

        let t = Instant::now();
        let searchable: Vec<&RefinedQuery> = expanded
            .refined_queries
            .iter()
            .filter(|q| !q.terms.is_empty())
            .collect();
        let outcomes: Vec<Result<Vec<SearchResult>, BackendError>> = std::thread::scope(|scope| {
            let handles: Vec<_> = searchable
                .iter()
                .map(|q| scope.spawn(move || self.backend.search(q, k)))
                .collect();
            handles
                .into_iter()
                .zip(&searchable)
                .map(|(h, q)| {
                    h.join().unwrap_or_else(|_| {
                        Err(BackendError {
                            query_id: q.id,
                            kind: crate::backend::BackendErrorKind::Network("search thread panicked".into()),
                        })
                    })
                })
                .collect()
        });
        let search_ms = elapsed_ms(t);
        let t = Instant::now();
        let mut pooled: Vec<SearchResult> = Vec::new();
        let mut failures = Vec::new();
        for outcome in outcomes {
            match outcome {
                Ok(list) => pooled.extend(list),
                Err(e) => {
                    log::warn!("{e}");
                    failures.push(e);
                }
            }
        }
        if !searchable.is_empty() && failures.len() == searchable.len() {
            return Err(EngineError::BackendUnavailable(failures));
        }
        let appended = if self.params.deep_scoring {
            self.append_meta_keywords(&mut pooled)
        } else {
            HashMap::new()
        };
        let search_ms = search_ms + elapsed_ms(t);

        let t = Instant::now();
        let mut results = self.rank(&expanded, &pooled);
        for r in &mut results {
            if let Some(tail) = appended.get(&r.url) {
                if let Some(orig) = r.snippet.strip_suffix(tail.as_str()) {
                    r.snippet.truncate(orig.len());
                }
            }
        }
        let rank_ms = elapsed_ms(t);
        let Expanded {
            query,
            analysis,
            matches,
            keywords,
            expansions,
            refined_queries,
        } = expanded;
        Ok(SearchResponse {
            query,
            analysis,
            matches,
            keywords,
            expansions,
            refined_queries,
            results,
            failures,
            timings: Timings {
                analyze_ms,
                expand_ms,
                refine_ms,
                search_ms,
                rank_ms,
                total_ms: elapsed_ms(start),
            },
        })
    }

    /// Appends each page's meta keywords to its snippet. Returns the appended
    /// text by normalized url.
    fn append_meta_keywords(&self, pooled: &mut [SearchResult]) -> HashMap<String, String> {
        let mut urls: Vec<&str> = pooled.iter().map(|r| r.url.as_str()).collect();
        urls.sort_unstable();
        urls.dedup();
        let mut tails: HashMap<String, String> = HashMap::new();
        for chunk in urls.chunks(PAGE_FETCH_THREADS) {
            let metas: Vec<_> = std::thread::scope(|scope| {
                let handles: Vec<_> = chunk
                    .iter()
                    .map(|u| scope.spawn(move || self.backend.page_meta(u)))
                    .collect();
                handles.into_iter().map(|h| h.join().ok().flatten()).collect()
            });
            for (url, meta) in chunk.iter().zip(metas) {
                let Some(meta) = meta.filter(|m| !m.meta_keywords.is_empty()) else {
                    continue;
                };
                tails.insert(url.to_string(), format!(" {}", meta.meta_keywords.join(" ")));
            }
        }
        for r in pooled.iter_mut() {
            if let Some(tail) = tails.get(&r.url) {
                r.snippet.push_str(tail);
            }
        }
        tails
            .into_iter()
            .map(|(url, tail)| (normalize_url(&url), tail))
            .collect()
    }

    /// Filters the pooled results of all refined queries, then fuses and
    /// scores them.
    pub fn rank(&self, expanded: &Expanded, pooled: &[SearchResult]) -> Vec<RankedResult> {
        let kept = filter_results(
            pooled,
            &expanded.keywords,
            &expanded.analysis.anchor_terms,
            self.params.theta,
            self.params.k_min,
        );
        let mut lists: Vec<Vec<SearchResult>> = expanded.refined_queries.iter().map(|_| Vec::new()).collect();
        for r in kept {
            if let Some(list) = lists.get_mut(r.query_id) {
                list.push(r);
            }
        }
        fuse_and_rank(
            &lists,
            &expanded.keywords,
            &expanded.analysis.content_phrases(),
            &self.params.weights,
            &FusionOptions {
                rrf_k: self.params.rrf_k,
                k_out: self.params.k_out,
            },
        )
    }
}
