use std::time::Duration;

use serde::Deserialize;
use serde_json::Value;

use super::{extract_page_meta, BackendError, BackendErrorKind, PageMeta, SearchBackend, SearchResult};
use crate::refine::RefinedQuery;

/// Settings of a JSON-over-HTTP search API.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(default)]
pub struct LiveConfig {
    /// URL with `{q}` (URL-encoded query) and `{k}` placeholders.
    pub endpoint_template: String,
    pub timeout_ms: u64,
    pub retries: u32,
    /// Dot path to the result array in the response, e.g. `data.items`.
    pub results_path: String,
    pub url_field: String,
    pub title_field: String,
    pub snippet_field: String,
}

impl Default for LiveConfig {
    fn default() -> Self {
        Self {
            endpoint_template: String::new(),
            timeout_ms: 10_000,
            retries: 1,
            results_path: "items".into(),
            url_field: "link".into(),
            title_field: "title".into(),
            snippet_field: "snippet".into(),
        }
    }
}

#[derive(Debug)]
pub struct LiveBackend {
    config: LiveConfig,
    client: reqwest::blocking::Client,
}

impl LiveBackend {
    pub fn new(config: LiveConfig) -> Result<Self, reqwest::Error> {
        let client = reqwest::blocking::Client::builder()
            .timeout(Duration::from_millis(config.timeout_ms))
            .build()?;
        Ok(Self { config, client })
    }

    pub fn config(&self) -> &LiveConfig {
        &self.config
    }

    pub fn request_url(&self, query: &str, k: usize) -> String {
        let q: String = url::form_urlencoded::byte_serialize(query.as_bytes()).collect();
        self.config
            .endpoint_template
            .replace("{q}", &q)
            .replace("{k}", &k.to_string())
    }

    fn fetch(&self, url: &str) -> Result<Value, BackendErrorKind> {
        let response = self
            .client
            .get(url)
            .send()
            .map_err(|e| BackendErrorKind::Network(e.to_string()))?;
        let status = response.status();
        if !status.is_success() {
            return Err(BackendErrorKind::Status(status.as_u16()));
        }
        response
            .json::<Value>()
            .map_err(|e| BackendErrorKind::Decode(e.to_string()))
    }

    /// Maps a decoded response to results; items without a url are skipped.
    pub fn parse_response(
        &self,
        body: &Value,
        query_id: usize,
        k: usize,
    ) -> Result<Vec<SearchResult>, BackendErrorKind> {
        let items = lookup(body, &self.config.results_path)
            .ok_or_else(|| BackendErrorKind::Decode(format!("no `{}` in response", self.config.results_path)))?;
        let Value::Array(items) = items else {
            return Err(BackendErrorKind::Decode(format!(
                "`{}` is not an array",
                self.config.results_path
            )));
        };
        let text = |item: &Value, path: &str| -> String {
            match lookup(item, path) {
                Some(Value::String(s)) => s.trim().to_string(),
                Some(Value::Null) | None => String::new(),
                Some(other) => other.to_string(),
            }
        };
        let mut results = Vec::new();
        for item in items {
            let url = text(item, &self.config.url_field);
            if url.is_empty() {
                continue;
            }
            results.push(SearchResult {
                url,
                title: text(item, &self.config.title_field),
                snippet: text(item, &self.config.snippet_field),
                backend_rank: results.len() + 1,
                query_id,
            });
            if results.len() == k {
                break;
            }
        }
        Ok(results)
    }
}

fn lookup<'v>(value: &'v Value, path: &str) -> Option<&'v Value> {
    path.split('.')
        .filter(|p| !p.is_empty())
        .try_fold(value, |v, key| match v {
            Value::Object(map) => map.get(key),
            Value::Array(items) => key.parse::<usize>().ok().and_then(|i| items.get(i)),
            _ => None,
        })
}

impl SearchBackend for LiveBackend {
    fn name(&self) -> &str {
        "live"
    }

    fn search(&self, query: &RefinedQuery, k: usize) -> Result<Vec<SearchResult>, BackendError> {
        let url = self.request_url(&query.text(), k);
        let mut attempt = 0;
        loop {
            let outcome = self
                .fetch(&url)
                .and_then(|body| self.parse_response(&body, query.id, k));
            match outcome {
                Ok(results) => return Ok(results),
                Err(kind) if attempt < self.config.retries && kind.is_transient() => {
                    log::warn!("query {}: {kind}; retrying", query.id);
                    attempt += 1;
                }
                Err(kind) => {
                    return Err(BackendError {
                        query_id: query.id,
                        kind,
                    })
                }
            }
        }
    }

    fn page_meta(&self, url: &str) -> Option<PageMeta> {
        let response = self.client.get(url).send().and_then(|r| r.error_for_status());
        match response.and_then(|r| r.text()) {
            Ok(html) => Some(extract_page_meta(&html)),
            Err(e) => {
                log::debug!("{url}: {e}");
                None
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn backend(template: &str) -> LiveBackend {
        LiveBackend::new(LiveConfig {
            endpoint_template: template.into(),
            results_path: "data.items".into(),
            url_field: "link".into(),
            title_field: "meta.title".into(),
            ..LiveConfig::default()
        })
        .unwrap()
    }

    #[test]
    fn template_placeholders() {
        let b = backend("http://s.test/search?q={q}&num={k}");
        assert_eq!(
            b.request_url("m.b.a colleges & fees", 10),
            "http://s.test/search?q=m.b.a+colleges+%26+fees&num=10"
        );
    }

    #[test]
    fn response_mapping() {
        let b = backend("");
        let body = json!({"data": {"items": [
            {"link": "http://a.edu", "meta": {"title": "A"}, "snippet": "sa"},
            {"title": "no link"},
            {"link": "http://b.edu", "snippet": null},
            {"link": "http://c.edu"}
        ]}});
        let r = b.parse_response(&body, 7, 2).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(
            (r[0].url.as_str(), r[0].title.as_str(), r[0].snippet.as_str()),
            ("http://a.edu", "A", "sa")
        );
        assert_eq!(
            (r[1].url.as_str(), r[1].backend_rank, r[1].query_id),
            ("http://b.edu", 2, 7)
        );
        assert!(b.parse_response(&json!({"data": {}}), 0, 5).is_err());
        assert!(b.parse_response(&json!({"data": {"items": 3}}), 0, 5).is_err());
    }
}
