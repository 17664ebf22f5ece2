use std::sync::OnceLock;

use sieu_core::backend::{
    extract_page_meta, html_to_text, BackendError, BackendErrorKind, SearchBackend, SearchResult,
};
use sieu_core::config::PipelineParams;
use sieu_core::refine::RefinedQuery;
use sieu_core::{Engine, EngineError};

fn engine() -> &'static Engine {
    static E: OnceLock<Engine> = OnceLock::new();
    E.get_or_init(|| Engine::bundled().unwrap())
}

#[test]
fn empty_query_is_rejected() {
    for q in ["", "   ", "\t\n"] {
        assert!(matches!(engine().search(q, None), Err(EngineError::EmptyQuery)));
        assert!(matches!(engine().expand(q), Err(EngineError::EmptyQuery)));
    }
}

#[test]
fn stop_word_query_yields_one_empty_query_and_no_results() {
    let r = engine().search("the of in", None).unwrap();
    assert!(r.analysis.content_terms.is_empty());
    assert!(r.keywords.is_empty());
    assert!(r.expansions.is_empty());
    assert_eq!(r.refined_queries.len(), 1);
    assert!(r.refined_queries[0].terms.is_empty());
    assert_eq!(r.refined_queries[0].prior, 1.0);
    assert!(r.results.is_empty());
    assert!(r.failures.is_empty());
}

#[test]
fn unmatched_query_runs_unexpanded() {
    let r = engine().search("quantum chromodynamics", None).unwrap();
    assert!(r.matches.is_empty());
    assert!(r.keywords.is_empty());
    assert_eq!(r.refined_queries.len(), 1);
    assert_eq!(r.refined_queries[0].terms, ["quantum", "chromodynamics"]);
}

#[test]
fn punctuation_and_unicode_do_not_panic() {
    for q in [
        "???",
        "anna—university",
        "école ünïversité",
        "m.b.a.",
        "a\u{0}b",
        "🙂 faculty",
        &"x ".repeat(300),
    ] {
        let _ = engine().search(q, Some(3));
    }
}

#[test]
fn malformed_html_meta() {
    let cases = [
        "",
        "<html><head><title>Unclosed",
        "<meta name=description content=\"no end",
        "<META NAME='Keywords' CONTENT='a, b'><title>T</title>",
        "<<<>>><title></title><meta>",
        "<!-- <title>hidden</title> --><title>shown</title>",
        "<title>caf\u{e9} &amp; bar &#x27;x&#39; &bogus;</title>",
        "<script>var s = '<title>x</title>';</script><body>text",
    ];
    for html in cases {
        let meta = extract_page_meta(html);
        let text = html_to_text(html);
        assert!(
            !meta.title.contains('<') || html.contains("<<<"),
            "{html:?} -> {meta:?}"
        );
        assert!(!text.contains("<script"));
    }
    let meta = extract_page_meta(cases[3]);
    assert_eq!(meta.title, "T");
    assert_eq!(meta.meta_keywords, ["a", "b"]);
    assert_eq!(extract_page_meta(cases[5]).title, "shown");
    assert_eq!(html_to_text(cases[7]), "text");
}

struct Flaky {
    fail_ids: Vec<usize>,
}

impl SearchBackend for Flaky {
    fn name(&self) -> &str {
        "flaky"
    }

    fn search(&self, query: &RefinedQuery, _k: usize) -> Result<Vec<SearchResult>, BackendError> {
        if self.fail_ids.contains(&query.id) || self.fail_ids.contains(&usize::MAX) {
            return Err(BackendError {
                query_id: query.id,
                kind: BackendErrorKind::Status(503),
            });
        }
        Ok(vec![SearchResult {
            url: format!("http://r.test/{}", query.id),
            title: query.text(),
            snippet: String::new(),
            backend_rank: 1,
            query_id: query.id,
        }])
    }
}

#[test]
fn partial_backend_failure_degrades() {
    let engine = Engine::with_backend(Box::new(Flaky { fail_ids: vec![0, 2] }), PipelineParams::default());
    let r = engine
        .search("list the teaching staff in anna university", None)
        .unwrap();
    let failed: Vec<usize> = r.failures.iter().map(|f| f.query_id).collect();
    assert_eq!(failed, [0, 2]);
    assert!(!r.results.is_empty());
    assert!(r
        .results
        .iter()
        .all(|x| x.url != "http://r.test/0" && x.url != "http://r.test/2"));
}

#[test]
fn total_backend_failure_is_an_error() {
    let engine = Engine::with_backend(
        Box::new(Flaky {
            fail_ids: vec![usize::MAX],
        }),
        PipelineParams::default(),
    );
    match engine.search("colleges for doing M.B.A", None) {
        Err(EngineError::BackendUnavailable(errors)) => assert!(!errors.is_empty()),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn long_query_stays_fast() {
    let q = "faculty staff of anna university ".repeat(60);
    let r = engine().search(&q, Some(3)).unwrap();
    assert!(r.timings.expand_ms < 2000.0, "{:?}", r.timings);
}
