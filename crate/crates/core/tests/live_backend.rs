use std::io::{BufRead, BufReader, Read, Write};
use std::net::TcpListener;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use sieu_core::backend::{BackendErrorKind, LiveBackend, LiveConfig, SearchBackend};
use sieu_core::config::PipelineParams;
use sieu_core::refine::RefinedQuery;
use sieu_core::Engine;

/// Serves canned responses in order (the last one repeats) and records
/// request lines.
fn fake_api(responses: Vec<(u16, String)>) -> (String, Arc<std::sync::Mutex<Vec<String>>>, Arc<AtomicUsize>) {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = listener.local_addr().unwrap();
    let seen = Arc::new(std::sync::Mutex::new(Vec::new()));
    let hits = Arc::new(AtomicUsize::new(0));
    let (seen2, hits2) = (seen.clone(), hits.clone());
    std::thread::spawn(move || {
        for stream in listener.incoming() {
            let Ok(mut stream) = stream else { continue };
            let mut reader = BufReader::new(stream.try_clone().unwrap());
            let mut request_line = String::new();
            reader.read_line(&mut request_line).unwrap();
            let mut len = 0;
            loop {
                let mut h = String::new();
                reader.read_line(&mut h).unwrap();
                if h.trim().is_empty() {
                    break;
                }
                if let Some(v) = h.to_ascii_lowercase().strip_prefix("content-length:") {
                    len = v.trim().parse().unwrap_or(0);
                }
            }
            let mut body = vec![0; len];
            reader.read_exact(&mut body).unwrap();
            seen2.lock().unwrap().push(request_line.trim().to_string());
            let n = hits2.fetch_add(1, Ordering::SeqCst);
            let (status, body) = &responses[n.min(responses.len() - 1)];
            let reply = format!(
                "HTTP/1.1 {status} X\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
                body.len()
            );
            let _ = stream.write_all(reply.as_bytes());
        }
    });
    (format!("http://{addr}"), seen, hits)
}

fn query(id: usize, terms: &[&str]) -> RefinedQuery {
    RefinedQuery {
        id,
        terms: terms.iter().map(|t| t.to_string()).collect(),
        prior: 1.0,
        provenance: Vec::new(),
    }
}

fn backend(base: &str, retries: u32) -> LiveBackend {
    LiveBackend::new(LiveConfig {
        endpoint_template: format!("{base}/search?q={{q}}&n={{k}}"),
        retries,
        timeout_ms: 2000,
        ..LiveConfig::default()
    })
    .unwrap()
}

const OK_BODY: &str = r#"{"items": [
    {"link": "http://a.edu/", "title": "A", "snippet": "faculty list"},
    {"link": "http://b.edu/", "title": "B", "snippet": "people"},
    {"link": "http://c.edu/", "title": "C"}
]}"#;

#[test]
fn maps_results_and_encodes_query() {
    let (base, seen, _) = fake_api(vec![(200, OK_BODY.into())]);
    let results = backend(&base, 0).search(&query(3, &["m.b.a", "colleges"]), 2).unwrap();
    assert_eq!(results.len(), 2);
    assert_eq!(results[0].url, "http://a.edu/");
    assert_eq!((results[1].backend_rank, results[1].query_id), (2, 3));
    assert_eq!(seen.lock().unwrap()[0], "GET /search?q=m.b.a+colleges&n=2 HTTP/1.1");
}

#[test]
fn retries_transient_status() {
    let (base, _, hits) = fake_api(vec![(503, "{}".into()), (200, OK_BODY.into())]);
    let results = backend(&base, 1).search(&query(0, &["x"]), 10).unwrap();
    assert_eq!(results.len(), 3);
    assert_eq!(hits.load(Ordering::SeqCst), 2);
}

#[test]
fn client_error_is_not_retried() {
    let (base, _, hits) = fake_api(vec![(404, "{}".into())]);
    let err = backend(&base, 3).search(&query(1, &["x"]), 10).unwrap_err();
    assert_eq!(err.kind, BackendErrorKind::Status(404));
    assert_eq!(err.query_id, 1);
    assert_eq!(hits.load(Ordering::SeqCst), 1);
}

#[test]
fn bad_json_is_a_decode_error() {
    let (base, _, _) = fake_api(vec![(200, "not json".into())]);
    let err = backend(&base, 0).search(&query(0, &["x"]), 10).unwrap_err();
    assert!(matches!(err.kind, BackendErrorKind::Decode(_)));
}

#[test]
fn unreachable_host_is_a_network_error() {
    let port = TcpListener::bind("127.0.0.1:0").unwrap().local_addr().unwrap().port();
    let err = backend(&format!("http://127.0.0.1:{port}"), 0)
        .search(&query(0, &["x"]), 10)
        .unwrap_err();
    assert!(matches!(err.kind, BackendErrorKind::Network(_)));
    assert!(err.kind.is_transient());
}

#[test]
fn engine_over_live_backend() {
    let (base, seen, _) = fake_api(vec![(200, OK_BODY.into())]);
    let engine = Engine::with_backend(Box::new(backend(&base, 0)), PipelineParams::default());
    let r = engine
        .search("list the teaching staff in anna university", Some(3))
        .unwrap();
    assert_eq!(seen.lock().unwrap().len(), r.refined_queries.len());
    let urls: Vec<&str> = r.results.iter().map(|x| x.url.as_str()).collect();
    assert_eq!(urls, ["http://a.edu", "http://b.edu"]);
}

#[test]
fn page_meta_fetches_html() {
    let html =
        "<html><head><title>CSE Faculty</title><meta name=\"keywords\" content=\"faculty, people\"></head></html>";
    let (base, _, _) = fake_api(vec![(200, html.into())]);
    let meta = backend(&base, 0)
        .page_meta(&format!("{base}/cse/faculty.html"))
        .unwrap();
    assert_eq!(meta.title, "CSE Faculty");
    assert_eq!(meta.meta_keywords, ["faculty", "people"]);
    let (base, _, _) = fake_api(vec![(404, String::new())]);
    assert!(backend(&base, 0).page_meta(&base).is_none());
}
