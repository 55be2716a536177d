//! HTTP JSON API over `lc-core`.
//!
//! | route | purpose |
//! |---|---|
//! | `POST /api/polynomial` | store coefficients, returns `{id, degree}` |
//! | `GET /api/frame` | LzC frame at one θ, with polylines and a d² curve |
//! | `GET /api/map` | one proximity map (global or regional) with crossings and gaps |
//! | `POST /api/solve` | ranked estimate tables per map kind |
//!
//! Complex numbers are `{re, im}` objects and undefined values are `null`.

mod api;
mod error;

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use axum::routing::{get, post};
use axum::Router;
use lc_core::MonicPolynomial;
use serde::Serialize;
use tower_http::cors::CorsLayer;

pub use error::ApiError;

/// Largest partition a single request may ask for.
pub const DEFAULT_MAX_N: usize = 200_000;

#[derive(Debug, Clone, Serialize)]
pub struct Session {
    pub id: String,
    #[serde(skip)]
    pub polynomial: MonicPolynomial,
    /// Seconds since the Unix epoch.
    pub created_at: u64,
}

#[derive(Debug, Clone)]
pub struct AppState {
    sessions: Arc<RwLock<HashMap<String, Arc<Session>>>>,
    pub max_n: usize,
}

impl Default for AppState {
    fn default() -> Self {
        AppState::new(DEFAULT_MAX_N)
    }
}

impl AppState {
    pub fn new(max_n: usize) -> Self {
        AppState {
            sessions: Arc::default(),
            max_n,
        }
    }

    pub fn insert(&self, polynomial: MonicPolynomial) -> Arc<Session> {
        let created_at = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        let session = Arc::new(Session {
            id: uuid::Uuid::new_v4().simple().to_string(),
            polynomial,
            created_at,
        });
        self.sessions
            .write()
            .expect("session lock poisoned")
            .insert(session.id.clone(), session.clone());
        session
    }

    pub fn get(&self, id: &str) -> Option<Arc<Session>> {
        self.sessions.read().expect("session lock poisoned").get(id).cloned()
    }
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/api/polynomial", post(api::create_polynomial))
        .route("/api/frame", get(api::frame))
        .route("/api/map", get(api::map))
        .route("/api/solve", post(api::solve))
        .layer(CorsLayer::permissive())
        .with_state(state)
}

/// Serves the API on `0.0.0.0:port` until Ctrl-C.
pub async fn serve(port: u16, state: AppState) -> anyhow::Result<()> {
    let listener = tokio::net::TcpListener::bind(("0.0.0.0", port)).await?;
    tracing::info!("listening on {}", listener.local_addr()?);
    axum::serve(listener, router(state))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    Ok(())
}
