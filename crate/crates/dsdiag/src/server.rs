//! Stateless HTTP API over one shared, read-only knowledge base.
//!
//! - `GET /api/kb`: frame, conditions, symptom names with supported diseases.
//! - `POST /api/diagnose`: [`DiagnoseRequest`] in, [`DiagnoseResponse`] out;
//!   400 with an [`ErrorBody`] when the request is malformed or rejected.
//! - `/`: the static UI bundle from `--ui-dir`, or a placeholder page.

use std::path::PathBuf;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::State;
use axum::http::StatusCode;
use axum::response::{Html, IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use dsdiag_core::kb::KnowledgeBase;
use serde::{Deserialize, Serialize};
use tokio::net::TcpListener;
use tower_http::services::ServeDir;

use crate::diagnose_request;
use crate::report::{DiagnoseRequest, ErrorBody};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymptomView {
    pub name: String,
    pub supports: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KbView {
    pub frame: Vec<String>,
    pub conditions: Vec<String>,
    pub symptoms: Vec<SymptomView>,
}

impl KbView {
    pub fn new(kb: &KnowledgeBase) -> Self {
        KbView {
            frame: kb.frame.labels().to_vec(),
            conditions: kb.conditions.clone(),
            symptoms: kb
                .symptoms
                .iter()
                .map(|s| SymptomView {
                    name: s.name.clone(),
                    supports: kb.frame.members(s.supports).map(str::to_string).collect(),
                })
                .collect(),
        }
    }
}

const PLACEHOLDER_INDEX: &str = "<!doctype html>
<html><head><meta charset=\"utf-8\"><title>dsdiag</title></head>
<body>
<h1>dsdiag</h1>
<p>No UI bundle configured. Start the service with <code>--ui-dir &lt;dist&gt;</code>
to serve the consultation UI, or use the JSON API directly:</p>
<ul>
<li><a href=\"/api/kb\">GET /api/kb</a></li>
<li>POST /api/diagnose with <code>{\"condition\":\"1\",\"symptoms\":[\"fever\"],\"trace\":true}</code></li>
</ul>
</body></html>
";

async fn get_kb(State(kb): State<Arc<KnowledgeBase>>) -> Json<KbView> {
    Json(KbView::new(&kb))
}

fn bad_request(error: String) -> Response {
    (StatusCode::BAD_REQUEST, Json(ErrorBody { error })).into_response()
}

async fn post_diagnose(State(kb): State<Arc<KnowledgeBase>>, body: Bytes) -> Response {
    let req: DiagnoseRequest = match serde_json::from_slice(&body) {
        Ok(r) => r,
        Err(e) => return bad_request(format!("invalid request: {e}")),
    };
    match diagnose_request(&kb, &req) {
        Ok(resp) => Json(resp).into_response(),
        Err(e) => bad_request(e.to_string()),
    }
}

pub fn router(kb: Arc<KnowledgeBase>, ui_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/api/kb", get(get_kb))
        .route("/api/diagnose", post(post_diagnose))
        .with_state(kb);
    match ui_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api.route("/", get(|| async { Html(PLACEHOLDER_INDEX) })),
    }
}

/// Serves until the process is stopped. Binding errors are returned before
/// any request is accepted.
pub async fn serve(
    kb: Arc<KnowledgeBase>,
    addr: &str,
    ui_dir: Option<PathBuf>,
) -> std::io::Result<()> {
    let listener = TcpListener::bind(addr).await?;
    serve_on(listener, kb, ui_dir).await
}

pub async fn serve_on(
    listener: TcpListener,
    kb: Arc<KnowledgeBase>,
    ui_dir: Option<PathBuf>,
) -> std::io::Result<()> {
    axum::serve(listener, router(kb, ui_dir)).await
}
