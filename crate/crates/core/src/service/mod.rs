//! HTTP service: material preparation, attempt analysis and retrieval.
//!
//! | method | path | body | success |
//! |---|---|---|---|
//! | POST | `/materials` | WAV, or multipart `audio` + `alignment` [+ `title`] | 201 material |
//! | POST | `/materials/{id}/clips/{n}/attempts` | WAV, or multipart `audio` + `alignment` | 201 attempt |
//! | GET | `/materials` | | 200 materials in creation order |
//! | GET | `/materials/{id}` | | 200 material |
//! | GET | `/attempts/{id}` | | 200 attempt |
//! | GET | `/materials/{id}/clips/{n}/notation.svg` | | 200 SVG |
//!
//! Errors are JSON objects `{"error": ..., "hint": ...}` with status 400
//! (bad audio or alignment), 404 (unknown id), 422 (nothing recognized) or
//! 502 (recognizer needed but unavailable).

mod http;
pub mod store;

use std::io;
use std::net::SocketAddr;
use std::sync::Arc;
use std::thread;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use crate::compare::ComparisonReport;
use crate::config::Config;
use crate::pipeline::{Analyzer, PipelineError};
use crate::rhythm::RhythmTrack;

pub use http::router;
pub use store::{Store, StoreError};

/// One dubbing attempt and its comparison with the clip's target.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Attempt {
    pub attempt_id: String,
    pub material_id: String,
    pub clip_index: usize,
    pub created_at: DateTime<Utc>,
    pub target: RhythmTrack,
    pub user_track: RhythmTrack,
    pub report: ComparisonReport,
    pub audio_ref: String,
}

pub struct AppState {
    pub store: Store,
    pub analyzer: Analyzer,
}

impl AppState {
    pub fn new(store: Store, analyzer: Analyzer) -> Arc<Self> {
        Arc::new(Self { store, analyzer })
    }

    pub fn from_config(cfg: &Config) -> io::Result<Arc<Self>> {
        let analyzer = Analyzer::from_config(cfg).map_err(|e| io::Error::new(io::ErrorKind::InvalidInput, e))?;
        Ok(Self::new(Store::open(&cfg.store_dir)?, analyzer))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ReanalyzeError {
    #[error("unknown attempt {0}")]
    UnknownAttempt(String),
    #[error(transparent)]
    Store(#[from] StoreError),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
}

/// Runs a stored attempt's audio through the pipeline again.
pub fn reanalyze_attempt(state: &AppState, attempt_id: &str) -> Result<ComparisonReport, ReanalyzeError> {
    let attempt = state
        .store
        .attempt(attempt_id)?
        .ok_or_else(|| ReanalyzeError::UnknownAttempt(attempt_id.to_string()))?;
    let (wav, alignment) = state
        .store
        .attempt_inputs(attempt_id)?
        .ok_or_else(|| ReanalyzeError::UnknownAttempt(attempt_id.to_string()))?;
    let (_, user) = state.analyzer.analyze_recording(&wav, alignment.as_deref())?;
    Ok(state.analyzer.compare(&attempt.target, &user))
}

pub async fn serve(cfg: Config) -> io::Result<()> {
    let state = AppState::from_config(&cfg)?;
    let listener = tokio::net::TcpListener::bind(&cfg.bind).await?;
    log::info!("listening on {}", listener.local_addr()?);
    axum::serve(listener, router(state)).await
}

/// A service running on its own runtime thread.
pub struct RunningService {
    pub addr: SocketAddr,
    shutdown: Option<tokio::sync::oneshot::Sender<()>>,
    thread: Option<thread::JoinHandle<()>>,
}

impl RunningService {
    pub fn url(&self, path: &str) -> String {
        format!("http://{}{}", self.addr, path)
    }
}

impl Drop for RunningService {
    fn drop(&mut self) {
        if let Some(tx) = self.shutdown.take() {
            let _ = tx.send(());
        }
        if let Some(t) = self.thread.take() {
            let _ = t.join();
        }
    }
}

/// Starts the service on `bind` (use port 0 for an ephemeral port) in a
/// background thread; it stops when the handle is dropped.
pub fn spawn(state: Arc<AppState>, bind: &str) -> io::Result<RunningService> {
    let std_listener = std::net::TcpListener::bind(bind)?;
    std_listener.set_nonblocking(true)?;
    let addr = std_listener.local_addr()?;
    let runtime = tokio::runtime::Builder::new_multi_thread()
        .worker_threads(4)
        .enable_all()
        .build()?;
    let (tx, rx) = tokio::sync::oneshot::channel::<()>();
    let thread = thread::spawn(move || {
        runtime.block_on(async move {
            let listener = tokio::net::TcpListener::from_std(std_listener).expect("listener");
            let _ = axum::serve(listener, router(state))
                .with_graceful_shutdown(async {
                    let _ = rx.await;
                })
                .await;
        });
    });
    Ok(RunningService {
        addr,
        shutdown: Some(tx),
        thread: Some(thread),
    })
}
