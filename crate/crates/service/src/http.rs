//! JSON-over-HTTP surface of the [`Store`].

use std::path::Path;
use std::sync::{Arc, Mutex, MutexGuard};

use axum::extract::{Path as UrlPath, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use seframe::evaluation::Campaign;
use serde::Deserialize;
use serde_json::json;
use tower_http::services::ServeDir;

use crate::store::{ServiceError, Store, Submission};

pub type SharedStore = Arc<Mutex<Store>>;

impl IntoResponse for ServiceError {
    fn into_response(self) -> Response {
        let status = match &self {
            ServiceError::UnknownCampaign(_) | ServiceError::UnknownSession(_) => StatusCode::NOT_FOUND,
            ServiceError::UnknownEvaluator { .. } => StatusCode::FORBIDDEN,
            ServiceError::NoTasksRemaining => StatusCode::GONE,
            ServiceError::InvalidVerdict(_) | ServiceError::InvalidCampaign(_) => StatusCode::UNPROCESSABLE_ENTITY,
            ServiceError::Journal(_) => StatusCode::INTERNAL_SERVER_ERROR,
            _ => StatusCode::CONFLICT,
        };
        (status, Json(json!({ "error": self.code(), "message": self.to_string() }))).into_response()
    }
}

fn lock(store: &SharedStore) -> MutexGuard<'_, Store> {
    store.lock().unwrap_or_else(|p| p.into_inner())
}

#[derive(Deserialize)]
struct SessionQuery {
    session: String,
}

#[derive(Deserialize)]
struct NewSession {
    evaluator: String,
}

#[derive(Deserialize)]
struct VerifyQuery {
    campaign: String,
    evaluator: String,
    code: String,
}

#[derive(Deserialize)]
struct ReportQuery {
    #[serde(default)]
    format: Option<String>,
}

async fn create_campaign(State(s): State<SharedStore>, Json(c): Json<Campaign>) -> Result<Response, ServiceError> {
    let id = c.id.clone();
    lock(&s).add_campaign(c)?;
    Ok((StatusCode::CREATED, Json(json!({ "id": id }))).into_response())
}

async fn list_campaigns(State(s): State<SharedStore>) -> Json<serde_json::Value> {
    let store = lock(&s);
    let list: Vec<_> = store
        .campaign_ids()
        .into_iter()
        .map(|id| json!({ "id": id, "closed": store.is_closed(&id) }))
        .collect();
    Json(json!(list))
}

async fn create_session(
    State(s): State<SharedStore>,
    UrlPath(id): UrlPath<String>,
    Json(body): Json<NewSession>,
) -> Result<Response, ServiceError> {
    let info = lock(&s).create_session(&id, &body.evaluator)?;
    Ok((StatusCode::CREATED, Json(info)).into_response())
}

async fn next_task(
    State(s): State<SharedStore>,
    UrlPath(id): UrlPath<String>,
    Query(q): Query<SessionQuery>,
) -> Result<Response, ServiceError> {
    Ok(Json(lock(&s).next_task(&id, &q.session)?).into_response())
}

async fn close_campaign(State(s): State<SharedStore>, UrlPath(id): UrlPath<String>) -> Result<Response, ServiceError> {
    lock(&s).close_campaign(&id)?;
    Ok(Json(json!({ "id": id, "closed": true })).into_response())
}

async fn submit(State(s): State<SharedStore>, Json(sub): Json<Submission>) -> Result<Response, ServiceError> {
    Ok(Json(lock(&s).submit(sub)?).into_response())
}

async fn session_info(State(s): State<SharedStore>, Query(q): Query<SessionQuery>) -> Result<Response, ServiceError> {
    Ok(Json(lock(&s).session_info(&q.session)?).into_response())
}

async fn completion_code(State(s): State<SharedStore>, Query(q): Query<SessionQuery>) -> Result<Response, ServiceError> {
    let code = lock(&s).completion_code(&q.session)?;
    Ok(Json(json!({ "code": code })).into_response())
}

async fn verify(State(s): State<SharedStore>, Query(q): Query<VerifyQuery>) -> Json<serde_json::Value> {
    let valid = lock(&s).verify_code(&q.campaign, &q.evaluator, &q.code);
    Json(json!({ "valid": valid }))
}

async fn report(
    State(s): State<SharedStore>,
    UrlPath(id): UrlPath<String>,
    Query(q): Query<ReportQuery>,
) -> Result<Response, ServiceError> {
    let report = lock(&s).report(&id)?;
    Ok(match q.format.as_deref() {
        Some("csv") => ([(header::CONTENT_TYPE, "text/csv")], report.to_csv()).into_response(),
        _ => Json(report).into_response(),
    })
}

/// Routes under `/api`, plus the UI bundle in `static_dir` for every
/// other path when given.
pub fn router(store: SharedStore, static_dir: Option<&Path>) -> Router {
    let api = Router::new()
        .route("/api/campaigns", post(create_campaign).get(list_campaigns))
        .route("/api/campaigns/{id}/sessions", post(create_session))
        .route("/api/campaigns/{id}/next", get(next_task))
        .route("/api/campaigns/{id}/close", post(close_campaign))
        .route("/api/judgments", post(submit))
        .route("/api/sessions", get(session_info))
        .route("/api/completion-code", get(completion_code))
        .route("/api/completion-code/verify", get(verify))
        .route("/api/reports/{campaign}", get(report))
        .with_state(store);
    match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

/// Serves until ctrl-c.
pub async fn serve(listener: tokio::net::TcpListener, store: SharedStore, static_dir: Option<&Path>) -> std::io::Result<()> {
    axum::serve(listener, router(store, static_dir))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
