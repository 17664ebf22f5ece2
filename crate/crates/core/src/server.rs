//! HTTP service: `/health`, `/api/search` and `/api/expand` over a shared
//! engine.

use std::net::SocketAddr;
use std::sync::Arc;

use axum::extract::{Query, State};
use axum::http::{HeaderValue, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::json;
use tower_http::cors::{AllowOrigin, CorsLayer};

use crate::engine::{Engine, EngineError};

#[derive(Debug, Deserialize)]
struct SearchParams {
    q: Option<String>,
    k: Option<String>,
}

#[derive(Debug, Serialize)]
struct ErrorBody {
    error: String,
}

struct ApiError(StatusCode, String);

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(ErrorBody { error: self.1 })).into_response()
    }
}

impl From<EngineError> for ApiError {
    fn from(e: EngineError) -> Self {
        let status = match e {
            EngineError::EmptyQuery => StatusCode::BAD_REQUEST,
            EngineError::BackendUnavailable(_) => StatusCode::BAD_GATEWAY,
            _ => StatusCode::INTERNAL_SERVER_ERROR,
        };
        ApiError(status, e.to_string())
    }
}

fn query_text(params: &SearchParams) -> Result<String, ApiError> {
    match params.q.as_deref().map(str::trim) {
        Some(q) if !q.is_empty() => Ok(q.to_string()),
        _ => Err(ApiError(
            StatusCode::BAD_REQUEST,
            "missing or empty `q` parameter".into(),
        )),
    }
}

fn result_count(params: &SearchParams) -> Result<Option<usize>, ApiError> {
    match params.k.as_deref() {
        None | Some("") => Ok(None),
        Some(raw) => match raw.parse::<usize>() {
            Ok(k) if (1..=100).contains(&k) => Ok(Some(k)),
            _ => Err(ApiError(
                StatusCode::BAD_REQUEST,
                format!("`k` must be an integer in 1..=100, got `{raw}`"),
            )),
        },
    }
}

async fn blocking<T, F>(f: F) -> Result<T, ApiError>
where
    F: FnOnce() -> Result<T, EngineError> + Send + 'static,
    T: Send + 'static,
{
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?
        .map_err(ApiError::from)
}

async fn health() -> Json<serde_json::Value> {
    Json(json!({"status": "ok"}))
}

async fn search(State(engine): State<Arc<Engine>>, Query(params): Query<SearchParams>) -> Result<Response, ApiError> {
    let q = query_text(&params)?;
    let k = result_count(&params)?;
    let response = blocking(move || engine.search(&q, k)).await?;
    Ok(Json(response).into_response())
}

async fn expand(State(engine): State<Arc<Engine>>, Query(params): Query<SearchParams>) -> Result<Response, ApiError> {
    let q = query_text(&params)?;
    let expanded = blocking(move || engine.expand(&q)).await?;
    Ok(Json(expanded).into_response())
}

fn cors(origins: &[String]) -> CorsLayer {
    let allow = if origins.is_empty() {
        AllowOrigin::any()
    } else {
        AllowOrigin::list(origins.iter().filter_map(|o| match HeaderValue::from_str(o) {
            Ok(v) => Some(v),
            Err(_) => {
                log::warn!("ignoring invalid CORS origin {o:?}");
                None
            }
        }))
    };
    CorsLayer::new().allow_origin(allow).allow_methods([Method::GET])
}

pub fn router(engine: Arc<Engine>, cors_origins: &[String]) -> Router {
    Router::new()
        .route("/health", get(health))
        .route("/api/search", get(search))
        .route("/api/expand", get(expand))
        .layer(cors(cors_origins))
        .with_state(engine)
}

/// Binds `addr`, calls `on_bound` with the actual address (useful with
/// port 0) and serves until Ctrl-C. Blocks the calling thread.
pub fn serve(
    engine: Engine,
    addr: &str,
    cors_origins: &[String],
    on_bound: impl FnOnce(SocketAddr),
) -> std::io::Result<()> {
    let engine = Arc::new(engine);
    let app = router(Arc::clone(&engine), cors_origins);
    let runtime = tokio::runtime::Builder::new_multi_thread().enable_all().build()?;
    let outcome = runtime.block_on(async move {
        let listener = tokio::net::TcpListener::bind(addr).await?;
        on_bound(listener.local_addr()?);
        axum::serve(listener, app)
            .with_graceful_shutdown(async {
                let _ = tokio::signal::ctrl_c().await;
            })
            .await
    });
    drop(runtime);
    drop(engine);
    outcome
}
