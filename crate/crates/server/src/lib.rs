//! HTTP service over built topic dependency models.
//!
//! `POST /datasets` takes `{"sqa": "<csv>", "qt": "<csv>"}` and builds the
//! model eagerly. Every `GET` is safe and cacheable: the dataset id doubles as
//! the strong `ETag`, and views are rendered by the same pipeline as the CLI so
//! the bytes match.

pub mod store;

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, RawQuery, State};
use axum::http::{header, HeaderMap, HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use serde::{Deserialize, Serialize};
use tdm_core::levels::partition_levels;
use tdm_core::{model_json, render_view, LayoutConfig, Tdm, ViewRequest};
use tower_http::cors::CorsLayer;

pub use store::{dataset_id, DatasetEntry, Store, StoreError};

pub const DEFAULT_ADDR: &str = "127.0.0.1:8080";

#[derive(Debug, Clone)]
pub struct AppState {
    pub store: Arc<Store>,
    pub layout: LayoutConfig,
}

impl AppState {
    pub fn new(store: Store) -> Self {
        Self {
            store: Arc::new(store),
            layout: LayoutConfig::default(),
        }
    }
}

#[derive(Deserialize)]
struct UploadBody {
    sqa: String,
    qt: String,
}

#[derive(Serialize)]
struct Created<'a> {
    id: &'a str,
    vertices: usize,
    edges: usize,
    zero_coverage_sets: usize,
    sqa_digest: &'a str,
    qt_digest: &'a str,
    created_at: u64,
}

#[derive(Serialize)]
struct ErrorBody {
    error: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    line: Option<u64>,
}

#[derive(Serialize)]
struct LevelDoc {
    level: usize,
    edges: Vec<String>,
}

#[derive(Serialize)]
struct LevelsDoc {
    levels: Vec<LevelDoc>,
}

fn error(status: StatusCode, message: impl Into<String>, line: Option<u64>) -> Response {
    let body = serde_json::to_string(&ErrorBody {
        error: message.into(),
        line,
    })
    .expect("error body serializes");
    (status, [(header::CONTENT_TYPE, "application/json")], body).into_response()
}

fn not_found(id: &str) -> Response {
    error(
        StatusCode::NOT_FOUND,
        format!("unknown dataset `{id}`"),
        None,
    )
}

fn etag_matches(headers: &HeaderMap, etag: &str) -> bool {
    headers
        .get_all(header::IF_NONE_MATCH)
        .iter()
        .filter_map(|v| v.to_str().ok())
        .flat_map(|v| v.split(','))
        .map(str::trim)
        .any(|t| t == "*" || t == etag || t.strip_prefix("W/") == Some(etag))
}

/// 200 with validators, or 304 when the client already holds this version.
fn cacheable(
    entry: &DatasetEntry,
    headers: &HeaderMap,
    content_type: &'static str,
    body: String,
) -> Response {
    let etag = entry.etag();
    let validators = [
        (
            header::ETAG,
            HeaderValue::from_str(&etag).expect("hex etag"),
        ),
        (
            header::CACHE_CONTROL,
            HeaderValue::from_static("public, max-age=0, must-revalidate"),
        ),
    ];
    if etag_matches(headers, &etag) {
        return (StatusCode::NOT_MODIFIED, validators).into_response();
    }
    (
        StatusCode::OK,
        validators,
        [(header::CONTENT_TYPE, HeaderValue::from_static(content_type))],
        body,
    )
        .into_response()
}

async fn post_dataset(State(state): State<AppState>, body: Bytes) -> Response {
    let upload: UploadBody = match serde_json::from_slice(&body) {
        Ok(u) => u,
        Err(e) => {
            return error(
                StatusCode::BAD_REQUEST,
                format!("expected a JSON object with `sqa` and `qt` strings: {e}"),
                None,
            )
        }
    };
    match state
        .store
        .insert(upload.sqa.as_bytes(), upload.qt.as_bytes())
    {
        Ok((entry, created)) => {
            let doc = Created {
                id: &entry.id,
                vertices: entry.tdm.vertex_count(),
                edges: entry.tdm.edge_count(),
                zero_coverage_sets: entry.tdm.zero_coverage_sets().len(),
                sqa_digest: &entry.sqa_digest,
                qt_digest: &entry.qt_digest,
                created_at: entry.created_at,
            };
            let status = if created {
                StatusCode::CREATED
            } else {
                StatusCode::OK
            };
            let location = format!("/datasets/{}", entry.id);
            (
                status,
                [
                    (header::CONTENT_TYPE, "application/json".to_string()),
                    (header::LOCATION, location),
                    (header::ETAG, entry.etag()),
                ],
                serde_json::to_string(&doc).expect("created body serializes"),
            )
                .into_response()
        }
        Err(StoreError::Ingest(e)) => {
            error(StatusCode::UNPROCESSABLE_ENTITY, e.to_string(), e.line())
        }
        Err(e) => error(StatusCode::INTERNAL_SERVER_ERROR, e.to_string(), None),
    }
}

async fn get_model(
    State(state): State<AppState>,
    Path(id): Path<String>,
    headers: HeaderMap,
) -> Response {
    let Some(entry) = state.store.get(&id) else {
        return not_found(&id);
    };
    let body = model_json::to_json(&entry.tdm);
    cacheable(&entry, &headers, "application/json", body)
}

/// Level membership by canonical edge id, empty levels listed up to `|V|`.
pub fn levels_json(tdm: &Tdm) -> String {
    let levels = partition_levels(tdm)
        .iter()
        .map(|(level, edges)| LevelDoc {
            level,
            edges: edges.iter().map(|&e| Tdm::edge_id(e)).collect(),
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&LevelsDoc { levels }).expect("levels serialize");
    s.push('\n');
    s
}

async fn get_levels(
    State(state): State<AppState>,
    Path(id): Path<String>,
    headers: HeaderMap,
) -> Response {
    let Some(entry) = state.store.get(&id) else {
        return not_found(&id);
    };
    let body = levels_json(&entry.tdm);
    cacheable(&entry, &headers, "application/json", body)
}

async fn get_view(
    State(state): State<AppState>,
    Path(id): Path<String>,
    RawQuery(query): RawQuery,
    headers: HeaderMap,
) -> Response {
    let Some(entry) = state.store.get(&id) else {
        return not_found(&id);
    };
    let req = match ViewRequest::from_query(query.as_deref().unwrap_or("")) {
        Ok(r) => r,
        Err(e) => return error(StatusCode::BAD_REQUEST, e.to_string(), None),
    };
    match render_view(&entry.tdm, &req, &state.layout) {
        Ok(body) => cacheable(&entry, &headers, req.format.content_type(), body),
        Err(e) => error(StatusCode::BAD_REQUEST, e.to_string(), None),
    }
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/datasets", post(post_dataset))
        .route("/datasets/{id}/model", get(get_model))
        .route("/datasets/{id}/levels", get(get_levels))
        .route("/datasets/{id}/view", get(get_view))
        .layer(CorsLayer::permissive().expose_headers([header::ETAG, header::LOCATION]))
        .with_state(state)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ServeConfig {
    pub addr: SocketAddr,
    pub data_dir: Option<PathBuf>,
}

impl ServeConfig {
    /// Reads `TDM_ADDR` and `TDM_DATA_DIR`.
    pub fn from_env() -> Result<Self, String> {
        let addr = std::env::var("TDM_ADDR").unwrap_or_else(|_| DEFAULT_ADDR.to_string());
        let addr = addr
            .parse()
            .map_err(|e| format!("TDM_ADDR `{addr}` is not a socket address: {e}"))?;
        let data_dir = std::env::var_os("TDM_DATA_DIR")
            .filter(|v| !v.is_empty())
            .map(PathBuf::from);
        Ok(Self { addr, data_dir })
    }
}

pub async fn serve(config: ServeConfig) -> std::io::Result<()> {
    let store = match &config.data_dir {
        Some(dir) => Store::open(dir).map_err(std::io::Error::other)?,
        None => Store::in_memory(),
    };
    let listener = tokio::net::TcpListener::bind(config.addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(AppState::new(store)))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
