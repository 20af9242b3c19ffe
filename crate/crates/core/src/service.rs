//! Loopback JSON service behind the color-picker study.
//!
//! | Route | |
//! |---|---|
//! | `GET /models` | models with component names, ranges and slider steps |
//! | `POST /convert` | `{model, components}` → `{rgb_hex}` |
//! | `POST /target` | → `{rgb_hex, trial_id}`, a seeded random target |
//! | `POST /trial` | `{trial_id, participant_id, model, components, elapsed_s}` → appends to the session log |
//! | `GET /export` | the session log as CSV |
//!
//! Malformed bodies get 400; components outside their range get 422 with
//! the valid range echoed back.

use std::collections::HashMap;
use std::fs::{self, OpenOptions};
use std::io::{self, Write as _};
use std::net::{Ipv4Addr, SocketAddr};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use axum::extract::rejection::JsonRejection;
use axum::extract::State;
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::analysis::{FinalColor, SessionRecord, StudyModel, SESSION_HEADER};
use crate::color::{quantize_255, ColorCoord, ColorError, ComponentSpec, Rgb8};
use crate::transforms::ConversionContext;

pub const SESSION_DIR_ENV: &str = "COLORLAB_SESSION_DIR";
pub const SESSION_FILE: &str = "sessions.csv";
pub const DEFAULT_SEED: u64 = 0x5EED;

/// Session directory from `COLORLAB_SESSION_DIR`, else `./sessions`.
pub fn session_dir_from_env() -> PathBuf {
    std::env::var_os(SESSION_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("sessions"))
}

const RGB_COMPONENTS: [ComponentSpec; 3] = [
    ComponentSpec { name: "R", min: 0.0, max: 255.0, step: 1.0, bounded: true, circular: false },
    ComponentSpec { name: "G", min: 0.0, max: 255.0, step: 1.0, bounded: true, circular: false },
    ComponentSpec { name: "B", min: 0.0, max: 255.0, step: 1.0, bounded: true, circular: false },
];

pub fn study_components(model: StudyModel) -> &'static [ComponentSpec] {
    match model {
        StudyModel::Rgb => &RGB_COMPONENTS,
        StudyModel::Model(m) => m.components(),
    }
}

/// Shared state. The session log has a single writer behind `log`.
pub struct AppState {
    ctx: ConversionContext,
    rng: Mutex<ChaCha8Rng>,
    trials: Mutex<HashMap<String, Rgb8>>,
    log: Mutex<PathBuf>,
}

impl AppState {
    pub fn new(session_dir: impl Into<PathBuf>, seed: u64) -> io::Result<Self> {
        let dir = session_dir.into();
        fs::create_dir_all(&dir)?;
        let path = dir.join(SESSION_FILE);
        if !path.exists() {
            fs::write(&path, format!("{}\n", SESSION_HEADER.join(",")))?;
        }
        Ok(Self {
            ctx: ConversionContext::default(),
            rng: Mutex::new(ChaCha8Rng::seed_from_u64(seed)),
            trials: Mutex::new(HashMap::new()),
            log: Mutex::new(path),
        })
    }

    pub fn session_path(&self) -> PathBuf {
        self.log.lock().expect("log lock").clone()
    }
}

#[derive(Debug)]
pub enum ApiError {
    BadRequest(String),
    OutOfRange(ColorError),
    NotFound(String),
    Internal(String),
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let (status, body) = match self {
            ApiError::BadRequest(msg) => (StatusCode::BAD_REQUEST, json!({ "error": msg })),
            ApiError::NotFound(msg) => (StatusCode::NOT_FOUND, json!({ "error": msg })),
            ApiError::Internal(msg) => (StatusCode::INTERNAL_SERVER_ERROR, json!({ "error": msg })),
            ApiError::OutOfRange(e) => {
                let mut body = json!({ "error": e.to_string() });
                if let ColorError::OutOfRange { name, value, min, max, .. } = e {
                    body["component"] = json!(name);
                    body["value"] = json!(value);
                    body["min"] = json!(min);
                    body["max"] = json!(max);
                }
                (StatusCode::UNPROCESSABLE_ENTITY, body)
            }
        };
        (status, Json(body)).into_response()
    }
}

impl From<JsonRejection> for ApiError {
    fn from(r: JsonRejection) -> Self {
        ApiError::BadRequest(r.body_text())
    }
}

impl From<ColorError> for ApiError {
    fn from(e: ColorError) -> Self {
        match e {
            ColorError::OutOfRange { .. } | ColorError::NonFinite { .. } => ApiError::OutOfRange(e),
            other => ApiError::BadRequest(other.to_string()),
        }
    }
}

#[derive(Serialize)]
struct ModelInfo {
    name: &'static str,
    components: &'static [ComponentSpec],
}

async fn models() -> Json<Vec<ModelInfo>> {
    Json(
        StudyModel::all()
            .into_iter()
            .map(|m| ModelInfo {
                name: m.name(),
                components: study_components(m),
            })
            .collect(),
    )
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConvertRequest {
    pub model: String,
    pub components: Vec<f64>,
}

/// Validated RGB for `components` in `model`, exactly as the library computes it.
pub fn preview_rgb(ctx: &ConversionContext, model: StudyModel, components: &[f64]) -> Result<Rgb8, ApiError> {
    let StudyModel::Model(m) = model else {
        if components.len() != 3 {
            return Err(ApiError::BadRequest(format!(
                "rgb takes 3 components, got {}",
                components.len()
            )));
        }
        let mut ch = [0u8; 3];
        for ((dst, &v), spec) in ch.iter_mut().zip(components).zip(&RGB_COMPONENTS) {
            if !spec.contains(v) || !v.is_finite() {
                return Err(ApiError::OutOfRange(ColorError::OutOfRange {
                    model: "rgb".into(),
                    name: spec.name,
                    value: v,
                    min: spec.min,
                    max: spec.max,
                }));
            }
            *dst = quantize_255(v);
        }
        return Ok(Rgb8::new(ch[0], ch[1], ch[2]));
    };
    let coord = ColorCoord::new(m, components)?;
    Ok(ctx.try_inverse(&coord)?.to_rgb8())
}

fn parse_model(name: &str) -> Result<StudyModel, ApiError> {
    name.parse().map_err(|e: ColorError| ApiError::BadRequest(e.to_string()))
}

async fn convert(
    State(state): State<Arc<AppState>>,
    body: Result<Json<ConvertRequest>, JsonRejection>,
) -> Result<Json<serde_json::Value>, ApiError> {
    let Json(req) = body?;
    let model = parse_model(&req.model)?;
    let rgb = preview_rgb(&state.ctx, model, &req.components)?;
    Ok(Json(json!({ "rgb_hex": rgb.to_hex() })))
}

async fn target(State(state): State<Arc<AppState>>) -> Json<serde_json::Value> {
    // Holding both locks keeps the n-th target tied to the n-th trial id.
    let mut trials = state.trials.lock().expect("trials lock");
    let rgb = {
        let mut rng = state.rng.lock().expect("rng lock");
        Rgb8::new(rng.gen(), rng.gen(), rng.gen())
    };
    // Trials are never removed, so the count yields fresh ids.
    let trial_id = format!("t{:06}", trials.len() + 1);
    trials.insert(trial_id.clone(), rgb);
    Json(json!({ "rgb_hex": rgb.to_hex(), "trial_id": trial_id }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrialRequest {
    pub trial_id: String,
    pub participant_id: String,
    pub model: String,
    pub components: Vec<f64>,
    pub elapsed_s: f64,
}

fn append_record(path: &Path, record: &SessionRecord) -> io::Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(record.to_csv_row()).map_err(io::Error::other)?;
    let bytes = w.into_inner().map_err(|e| io::Error::other(e.to_string()))?;
    OpenOptions::new().append(true).open(path)?.write_all(&bytes)
}

async fn trial(
    State(state): State<Arc<AppState>>,
    body: Result<Json<TrialRequest>, JsonRejection>,
) -> Result<(StatusCode, Json<serde_json::Value>), ApiError> {
    let Json(req) = body?;
    if req.participant_id.trim().is_empty() || req.participant_id.contains([',', '\n', '\r', '"']) {
        return Err(ApiError::BadRequest("participant_id must be non-empty plain text".into()));
    }
    if !(req.elapsed_s.is_finite() && req.elapsed_s > 0.0) {
        return Err(ApiError::BadRequest(format!("elapsed_s must be positive, got {}", req.elapsed_s)));
    }
    let model = parse_model(&req.model)?;
    preview_rgb(&state.ctx, model, &req.components)?;
    let final_color = FinalColor::parse(model, &req.components).map_err(ApiError::BadRequest)?;
    let target = state
        .trials
        .lock()
        .expect("trials lock")
        .get(&req.trial_id)
        .copied()
        .ok_or_else(|| ApiError::NotFound(format!("unknown trial_id '{}'", req.trial_id)))?;
    let record = SessionRecord {
        participant_id: req.participant_id.trim().to_owned(),
        model,
        target,
        final_color,
        elapsed_s: req.elapsed_s,
        timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true),
    };
    let path = state.log.lock().expect("log lock");
    append_record(&path, &record).map_err(|e| ApiError::Internal(e.to_string()))?;
    Ok((StatusCode::CREATED, Json(json!({ "trial_id": req.trial_id, "recorded": true }))))
}

async fn export(State(state): State<Arc<AppState>>) -> Result<Response, ApiError> {
    let path = state.log.lock().expect("log lock");
    let body = fs::read_to_string(&*path).map_err(|e| ApiError::Internal(e.to_string()))?;
    Ok(([(header::CONTENT_TYPE, "text/csv; charset=utf-8")], body).into_response())
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/models", get(models))
        .route("/convert", post(convert))
        .route("/target", post(target))
        .route("/trial", post(trial))
        .route("/export", get(export))
        .with_state(state)
}

/// Serves on 127.0.0.1:`port` until the process ends.
pub async fn serve(state: Arc<AppState>, port: u16) -> io::Result<()> {
    let addr = SocketAddr::from((Ipv4Addr::LOCALHOST, port));
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(state)).await
}
