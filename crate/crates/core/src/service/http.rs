use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{DefaultBodyLimit, FromRequest, Multipart, Path, Query, Request, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use chrono::Utc;
use serde::Deserialize;
use serde_json::json;

use super::store::new_id;
use super::{AppState, Attempt};
use crate::ingest::{encode_wav, IngestError, Material};
use crate::notation::{render_track_svg, NotationOptions};
use crate::pipeline::PipelineError;

const MAX_UPLOAD: usize = 256 * 1024 * 1024;

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/materials", post(create_material).get(list_materials))
        .route("/materials/:id", get(get_material))
        .route("/materials/:id/clips/:n/attempts", post(create_attempt))
        .route("/materials/:id/clips/:n/notation.svg", get(clip_notation))
        .route("/attempts/:id", get(get_attempt))
        .layer(DefaultBodyLimit::max(MAX_UPLOAD))
        .with_state(state)
}

#[derive(Debug)]
struct ApiError {
    status: StatusCode,
    message: String,
    hint: Option<&'static str>,
}

impl ApiError {
    fn new(status: StatusCode, message: impl Into<String>) -> Self {
        Self {
            status,
            message: message.into(),
            hint: None,
        }
    }

    fn not_found(what: &str) -> Self {
        Self::new(StatusCode::NOT_FOUND, format!("unknown {what}"))
    }

    fn internal(e: impl std::fmt::Display) -> Self {
        Self::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string())
    }
}

impl From<PipelineError> for ApiError {
    fn from(e: PipelineError) -> Self {
        let status = match &e {
            PipelineError::Ingest(IngestError::AsrUnavailable(_)) => StatusCode::BAD_GATEWAY,
            PipelineError::EmptyTranscription => StatusCode::UNPROCESSABLE_ENTITY,
            _ => StatusCode::BAD_REQUEST,
        };
        let hint = match status {
            StatusCode::BAD_GATEWAY => Some(
                "upload multipart form data with an `audio` WAV part and an `alignment` part \
                 (text<TAB>start<TAB>end[<TAB>S|U] per word), or configure RHYTHM_ASR_URL",
            ),
            _ => None,
        };
        Self {
            status,
            message: e.to_string(),
            hint,
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let mut body = json!({ "error": self.message });
        if let Some(hint) = self.hint {
            body["hint"] = json!(hint);
        }
        (self.status, Json(body)).into_response()
    }
}

struct Upload {
    audio: Bytes,
    alignment: Option<String>,
    title: Option<String>,
}

async fn read_upload(state: &Arc<AppState>, req: Request) -> Result<Upload, ApiError> {
    let multipart = req
        .headers()
        .get(header::CONTENT_TYPE)
        .and_then(|v| v.to_str().ok())
        .is_some_and(|v| v.starts_with("multipart/form-data"));
    if !multipart {
        let audio = Bytes::from_request(req, state)
            .await
            .map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, e.body_text()))?;
        return Ok(Upload {
            audio,
            alignment: None,
            title: None,
        });
    }
    let bad = |e: axum::extract::multipart::MultipartError| ApiError::new(StatusCode::BAD_REQUEST, e.body_text());
    let mut form = Multipart::from_request(req, state)
        .await
        .map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, e.body_text()))?;
    let (mut audio, mut alignment, mut title) = (None, None, None);
    while let Some(field) = form.next_field().await.map_err(bad)? {
        match field.name() {
            Some("audio") => audio = Some(field.bytes().await.map_err(bad)?),
            Some("alignment") => {
                let bytes = field.bytes().await.map_err(bad)?;
                let text = String::from_utf8(bytes.to_vec())
                    .map_err(|_| ApiError::new(StatusCode::BAD_REQUEST, "alignment is not UTF-8"))?;
                alignment = Some(text);
            }
            Some("title") => title = Some(field.text().await.map_err(bad)?),
            _ => {}
        }
    }
    let audio = audio.ok_or_else(|| ApiError::new(StatusCode::BAD_REQUEST, "multipart body has no `audio` part"))?;
    Ok(Upload {
        audio,
        alignment,
        title,
    })
}

async fn blocking<T: Send + 'static>(f: impl FnOnce() -> Result<T, ApiError> + Send + 'static) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f).await.map_err(ApiError::internal)?
}

#[derive(Debug, Deserialize)]
struct TitleQuery {
    title: Option<String>,
}

async fn create_material(
    State(state): State<Arc<AppState>>,
    Query(query): Query<TitleQuery>,
    req: Request,
) -> Result<(StatusCode, Json<Material>), ApiError> {
    let upload = read_upload(&state, req).await?;
    let material = blocking(move || {
        let (pcm, clips) = state
            .analyzer
            .prepare_clips(&upload.audio, upload.alignment.as_deref())?;
        let material = Material {
            material_id: new_id(),
            title: upload
                .title
                .or(query.title)
                .unwrap_or_else(|| "untitled".to_string()),
            created_at: Utc::now(),
            audio_ref: "audio.wav".to_string(),
            clips,
        };
        state
            .store
            .insert_material(&material, &encode_wav(&pcm))
            .map_err(ApiError::internal)?;
        Ok(material)
    })
    .await?;
    Ok((StatusCode::CREATED, Json(material)))
}

async fn list_materials(State(state): State<Arc<AppState>>) -> Result<Json<Vec<Material>>, ApiError> {
    blocking(move || state.store.materials().map_err(ApiError::internal))
        .await
        .map(Json)
}

fn load_material(state: &AppState, id: &str) -> Result<Material, ApiError> {
    state
        .store
        .material(id)
        .map_err(ApiError::internal)?
        .ok_or_else(|| ApiError::not_found("material"))
}

async fn get_material(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Json<Material>, ApiError> {
    blocking(move || load_material(&state, &id)).await.map(Json)
}

async fn create_attempt(
    State(state): State<Arc<AppState>>,
    Path((id, n)): Path<(String, String)>,
    req: Request,
) -> Result<(StatusCode, Json<Attempt>), ApiError> {
    let upload = read_upload(&state, req).await;
    let material = {
        let state = state.clone();
        blocking(move || load_material(&state, &id)).await?
    };
    let clip = n
        .parse::<usize>()
        .ok()
        .and_then(|n| material.clips.get(n).cloned())
        .ok_or_else(|| ApiError::not_found("clip"))?;
    let upload = upload?;
    let attempt = blocking(move || {
        let (pcm, user_track) = state
            .analyzer
            .analyze_recording(&upload.audio, upload.alignment.as_deref())?;
        let report = state.analyzer.compare(&clip.target, &user_track);
        let attempt_id = new_id();
        let attempt = Attempt {
            audio_ref: format!("attempts/{attempt_id}.wav"),
            attempt_id,
            material_id: material.material_id.clone(),
            clip_index: clip.clip_index,
            created_at: Utc::now(),
            target: clip.target,
            user_track,
            report,
        };
        state
            .store
            .insert_attempt(&attempt, &encode_wav(&pcm), upload.alignment.as_deref())
            .map_err(ApiError::internal)?;
        Ok(attempt)
    })
    .await?;
    Ok((StatusCode::CREATED, Json(attempt)))
}

async fn get_attempt(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Json<Attempt>, ApiError> {
    blocking(move || {
        state
            .store
            .attempt(&id)
            .map_err(ApiError::internal)?
            .ok_or_else(|| ApiError::not_found("attempt"))
    })
    .await
    .map(Json)
}

async fn clip_notation(
    State(state): State<Arc<AppState>>,
    Path((id, n)): Path<(String, String)>,
) -> Result<Response, ApiError> {
    let material = blocking(move || load_material(&state, &id)).await?;
    let clip = n
        .parse::<usize>()
        .ok()
        .and_then(|n| material.clips.get(n))
        .ok_or_else(|| ApiError::not_found("clip"))?;
    let svg = render_track_svg(
        &clip.target,
        &NotationOptions {
            origin_s: clip.start_s,
            ..Default::default()
        },
    );
    Ok(([(header::CONTENT_TYPE, "image/svg+xml")], svg).into_response())
}
