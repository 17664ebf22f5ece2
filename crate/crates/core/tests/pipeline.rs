use std::collections::BTreeSet;
use std::sync::OnceLock;

use sieu_core::bundled;
use sieu_core::config::{Config, PipelineParams};
use sieu_core::eval::{parse_score_table, precision, summarize, JudgmentSet};
use sieu_core::lexicon::WordNetPos;
use sieu_core::refine::ExpansionSource;
use sieu_core::Engine;

const TRACE_QUERY: &str = "list the teaching staff in anna university";

fn engine() -> &'static Engine {
    static E: OnceLock<Engine> = OnceLock::new();
    E.get_or_init(|| Engine::bundled().expect("bundled engine"))
}

fn relevant() -> BTreeSet<String> {
    let text = std::fs::read_to_string(bundled::data_dir().join("corpus/judgments.tsv")).unwrap();
    JudgmentSet::parse(&text).unwrap().relevant("q1").unwrap().clone()
}

#[test]
fn trace_query_tags_and_chunks() {
    let a = engine().analyze(TRACE_QUERY);
    let tags: Vec<&str> = a.tokens.iter().map(|t| t.tag.as_str()).collect();
    assert_eq!(tags, ["NN", "DT", "NN", "NN", "IN", "NN", "NN"]);
    let chunks: Vec<String> = a.noun_phrases.iter().map(|p| p.tokens.join(" ")).collect();
    assert_eq!(chunks, ["list", "the teaching staff", "anna university"]);
    assert_eq!(a.content_terms, ["teaching", "staff", "anna", "university"]);
    assert_eq!(a.anchor_terms, ["anna", "university"]);
    assert!(!a.is_location_query);
}

#[test]
fn lexicon_golden_entries() {
    let wn = engine().lexicon();
    let provide: Vec<String> = wn
        .synonyms("provide", WordNetPos::Verb)
        .into_iter()
        .map(|s| s.lemma)
        .collect();
    assert!(provide.contains(&"supply".to_string()));
    assert!(wn.base_forms("doing", WordNetPos::Verb).contains(&"do".to_string()));
    let doing: Vec<String> = wn
        .synonyms("doing", WordNetPos::Verb)
        .into_iter()
        .map(|s| s.lemma)
        .collect();
    assert!(doing.contains(&"make".to_string()));
}

#[test]
fn trace_query_domain_keywords() {
    let e = engine().expand(TRACE_QUERY).unwrap();
    for k in [
        "faculty",
        "staff",
        "employee",
        "people",
        "teaching",
        "anna",
        "university",
    ] {
        assert!(e.keywords.contains(k), "missing {k}");
    }
    assert!(!e.keywords.contains("list"));
}

#[test]
fn faculties_query_substitutes_people() {
    let e = engine()
        .expand("Provide the Faculties in Computer Science Department Anna University")
        .unwrap();
    let first = &e.refined_queries[0];
    assert_eq!(first.prior, 1.0);
    assert!(first
        .provenance
        .iter()
        .all(|c| c.chosen.source == ExpansionSource::Original));
    let people = e
        .refined_queries
        .iter()
        .find(|q| q.terms.contains(&"people".to_string()) && !q.terms.contains(&"faculties".to_string()))
        .expect("a query with people in place of faculties");
    for anchor in &e.analysis.anchor_terms {
        assert!(people.terms.contains(anchor), "anchor {anchor} dropped");
    }
    assert!(e.refined_queries.windows(2).all(|w| w[0].prior >= w[1].prior));
}

#[test]
fn score_table_means() {
    let report = summarize(parse_score_table(bundled::SAMPLE_SCORES).unwrap()).unwrap();
    let google = report.average("google").unwrap();
    let sieu = report.average("sieu").unwrap();
    assert_eq!((google.queries, sieu.queries), (16, 16));
    assert!((sieu.precision - 0.768125).abs() < 1e-9);
    assert!((sieu.recall - 0.56125).abs() < 1e-9);
    assert!((google.precision - 0.65875).abs() < 1e-9);
    assert!((google.recall - 0.469375).abs() < 1e-9);
}

#[test]
fn expansion_beats_unexpanded_baseline() {
    let relevant = relevant();
    assert_eq!(relevant.len(), 8);
    let engine = engine();
    let expanded = engine.expand(TRACE_QUERY).unwrap();
    let baseline: Vec<String> = engine
        .backend()
        .search(&expanded.refined_queries[0], 10)
        .unwrap()
        .into_iter()
        .map(|r| sieu_core::rank::normalize_url(&r.url))
        .collect();
    assert_eq!(baseline.len(), 10);
    assert_eq!(precision(&baseline, &relevant), 0.0);

    let response = engine.search(TRACE_QUERY, None).unwrap();
    let top: Vec<String> = response.results.iter().take(10).map(|r| r.url.clone()).collect();
    assert!(precision(&top, &relevant) >= 0.5, "top 10: {top:#?}");
    assert!(response.timings.total_ms < 500.0);
}

#[test]
fn faculty_titled_page_outranks_keyword_only_distractor() {
    let response = engine().search(TRACE_QUERY, None).unwrap();
    let pos = |needle: &str| response.results.iter().position(|r| r.url.contains(needle));
    let faculty = pos("cse/faculty").expect("faculty page ranked");
    if let Some(d) = pos("campus/canteen") {
        assert!(faculty < d);
    }
}

#[test]
fn results_are_ordered_and_timings_consistent() {
    let r = engine().search("colleges for doing M.B.A", None).unwrap();
    assert!(!r.results.is_empty());
    for (i, res) in r.results.iter().enumerate() {
        assert_eq!(res.final_rank, i + 1);
    }
    assert!(r.results.windows(2).all(|w| w[0].total >= w[1].total));
    let t = r.timings;
    let stages = [t.analyze_ms, t.expand_ms, t.refine_ms, t.search_ms, t.rank_ms];
    assert!(stages.iter().all(|s| *s >= 0.0));
    assert!(stages.iter().sum::<f64>() <= t.total_ms + 1e-6);
}

#[test]
fn q_max_override_caps_refined_queries() {
    let (mut config, _) = Config::parse("[pipeline]\nq_max = 4\n").unwrap();
    config.paths.corpus_manifest = Some(bundled::corpus_manifest());
    let engine = Engine::from_config(&config).unwrap();
    let e = engine.expand(TRACE_QUERY).unwrap();
    assert!(e.refined_queries.len() <= 4);
    assert_eq!(e.refined_queries[0].prior, 1.0);
}

#[test]
fn location_query_adds_location_keywords() {
    let e = engine()
        .expand("How far is tagore university located from anna nagar")
        .unwrap();
    assert!(e.analysis.is_location_query);
    assert_eq!(e.analysis.location_terms, ["anna", "nagar"]);
    for t in &e.analysis.location_terms {
        assert_eq!(e.keywords.get(t).map(|k| k.weight), Some(1.0));
    }
    let r = engine().expand("hostels near guindy").unwrap();
    assert!(r.analysis.is_location_query);
    for t in &r.analysis.location_terms {
        assert!(r.keywords.contains(t), "{t}");
    }
}

#[test]
fn concurrent_searches_agree() {
    let engine = engine();
    let expected = serde_json::to_string(&engine.search(TRACE_QUERY, None).unwrap().results).unwrap();
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..4)
            .map(|_| s.spawn(|| engine.search(TRACE_QUERY, None).unwrap()))
            .collect();
        for h in handles {
            assert_eq!(serde_json::to_string(&h.join().unwrap().results).unwrap(), expected);
        }
    });
}

#[test]
fn default_params_match_config_defaults() {
    assert_eq!(engine().params(), &PipelineParams::default());
}

#[test]
fn deep_scoring_counts_meta_keywords_without_changing_snippets() {
    let (mut config, _) = Config::parse("[pipeline]\ndeep_scoring = true\n").unwrap();
    config.paths.corpus_manifest = Some(bundled::corpus_manifest());
    let deep = Engine::from_config(&config).unwrap().search(TRACE_QUERY, None).unwrap();
    let plain = engine().search(TRACE_QUERY, None).unwrap();
    let mut raised = 0;
    for r in &deep.results {
        if let Some(p) = plain.results.iter().find(|p| p.url == r.url) {
            assert_eq!(r.snippet, p.snippet);
            assert!(r.breakdown.cov_snippet >= p.breakdown.cov_snippet);
            raised += usize::from(r.breakdown.cov_snippet > p.breakdown.cov_snippet);
        }
    }
    assert!(raised > 0);
}
