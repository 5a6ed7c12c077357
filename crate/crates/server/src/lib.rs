//! HTTP JSON API over the posterior computation and the scenario registry.
//!
//! | Method | Path                         | Body / query                    |
//! |--------|------------------------------|---------------------------------|
//! | GET    | `/healthz`                   | `ok`                            |
//! | GET    | `/v1/scenarios`              | registry as a JSON array        |
//! | GET    | `/v1/prior-preview?a=..&b=..`| density on 512 points, mean, CI |
//! | POST   | `/v1/posterior`              | [`PosteriorRequest`]            |
//!
//! Validation failures answer 400 with `{"error", "field"}`, degenerate
//! numeric configurations 422, anything else 500 with an opaque id.

use std::net::SocketAddr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use axum::extract::rejection::{JsonRejection, QueryRejection};
use axum::extract::{Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use probnull_core::request::MAX_CHOSEN_SEED;
use probnull_core::rng::splitmix64;
use probnull_core::{
    builtin_scenarios, prior_summary, BetaParams, ComputeResponse, Error as CoreError,
    PosteriorRequest, ScenarioSpec, DEFAULT_CI_LEVEL,
};
use serde::{Deserialize, Serialize};
use serde_json::json;
use tower_http::cors::CorsLayer;

/// Points in a prior preview density.
pub const PREVIEW_POINTS: usize = 512;

/// Where seeds come from when a request leaves `seed` out.
#[derive(Debug)]
enum SeedSource {
    Random,
    Derived { root: u64, counter: AtomicU64 },
}

impl SeedSource {
    fn next(&self) -> u64 {
        let seed = match self {
            SeedSource::Random => rand::random::<u64>(),
            SeedSource::Derived { root, counter } => {
                splitmix64(root ^ splitmix64(counter.fetch_add(1, Ordering::Relaxed)))
            }
        };
        seed & MAX_CHOSEN_SEED
    }
}

#[derive(Debug, Clone)]
pub struct AppState {
    registry: Arc<Vec<ScenarioSpec>>,
    seeds: Arc<SeedSource>,
    error_ids: Arc<AtomicU64>,
}

impl AppState {
    /// With `root_seed`, seeds chosen for requests that omit one follow a
    /// fixed sequence; without it they are random.
    pub fn new(root_seed: Option<u64>) -> Self {
        let seeds = match root_seed {
            Some(root) => SeedSource::Derived {
                root,
                counter: AtomicU64::new(0),
            },
            None => SeedSource::Random,
        };
        Self {
            registry: Arc::new(builtin_scenarios()),
            seeds: Arc::new(seeds),
            error_ids: Arc::new(AtomicU64::new(0)),
        }
    }
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/healthz", get(healthz))
        .route("/v1/scenarios", get(scenarios))
        .route("/v1/prior-preview", get(prior_preview))
        .route("/v1/posterior", post(posterior))
        .layer(CorsLayer::permissive())
        .with_state(state)
}

/// Serve until Ctrl-C.
pub async fn serve(listener: tokio::net::TcpListener, state: AppState) -> std::io::Result<()> {
    axum::serve(listener, router(state))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}

pub async fn bind(addr: SocketAddr) -> std::io::Result<tokio::net::TcpListener> {
    tokio::net::TcpListener::bind(addr).await
}

#[derive(Debug)]
pub enum ApiError {
    BadRequest {
        field: Option<String>,
        message: String,
    },
    Unprocessable(String),
    Internal(u64),
}

impl ApiError {
    fn from_core(err: CoreError, state: &AppState) -> Self {
        match err {
            CoreError::Degenerate { .. } | CoreError::TooFewDraws(_) => {
                ApiError::Unprocessable(err.to_string())
            }
            CoreError::Domain { .. } | CoreError::InvalidParameter { .. } => ApiError::BadRequest {
                field: err.field().map(str::to_owned),
                message: err.to_string(),
            },
            CoreError::PointTypeIIRequired => internal(state, &err),
        }
    }
}

fn internal(state: &AppState, detail: &dyn std::fmt::Display) -> ApiError {
    let id = state.error_ids.fetch_add(1, Ordering::Relaxed);
    log::error!("internal error {id}: {detail}");
    ApiError::Internal(id)
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        match self {
            ApiError::BadRequest { field, message } => (
                StatusCode::BAD_REQUEST,
                Json(json!({ "error": message, "field": field })),
            )
                .into_response(),
            ApiError::Unprocessable(message) => (
                StatusCode::UNPROCESSABLE_ENTITY,
                Json(json!({ "error": message })),
            )
                .into_response(),
            ApiError::Internal(id) => (
                StatusCode::INTERNAL_SERVER_ERROR,
                Json(json!({ "error": "internal error", "id": format!("{id:016x}") })),
            )
                .into_response(),
        }
    }
}

async fn healthz() -> &'static str {
    "ok"
}

async fn scenarios(State(state): State<AppState>) -> Json<Vec<ScenarioSpec>> {
    Json(state.registry.as_ref().clone())
}

#[derive(Debug, Deserialize)]
struct PreviewQuery {
    a: f64,
    b: f64,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct Density {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct PriorPreview {
    pub a: f64,
    pub b: f64,
    pub mean: f64,
    pub ci: [f64; 2],
    pub ci_level: f64,
    pub density: Density,
}

pub fn preview(a: f64, b: f64) -> Result<PriorPreview, CoreError> {
    let dist = BetaParams::new(a, b)?;
    let summary = prior_summary(&dist, DEFAULT_CI_LEVEL)?;
    let (x, y) = dist.density_grid(PREVIEW_POINTS);
    Ok(PriorPreview {
        a,
        b,
        mean: summary.mean,
        ci: summary.ci,
        ci_level: summary.ci_level,
        density: Density { x, y },
    })
}

async fn prior_preview(
    State(state): State<AppState>,
    query: Result<Query<PreviewQuery>, QueryRejection>,
) -> Result<Json<PriorPreview>, ApiError> {
    let Query(q) = query.map_err(|e| ApiError::BadRequest {
        field: None,
        message: e.body_text(),
    })?;
    preview(q.a, q.b)
        .map(Json)
        .map_err(|e| ApiError::from_core(e, &state))
}

async fn posterior(
    State(state): State<AppState>,
    body: Result<Json<PosteriorRequest>, JsonRejection>,
) -> Result<Json<ComputeResponse>, ApiError> {
    let Json(req) = body.map_err(|e| ApiError::BadRequest {
        field: None,
        message: e.body_text(),
    })?;
    let resolved = req
        .resolve(|| state.seeds.next())
        .map_err(|e| ApiError::from_core(e, &state))?;
    let outcome = tokio::task::spawn_blocking(move || resolved.compute()).await;
    match outcome {
        Ok(Ok(resp)) => Ok(Json(resp)),
        Ok(Err(e)) => Err(ApiError::from_core(e, &state)),
        Err(join) => Err(internal(&state, &join)),
    }
}
