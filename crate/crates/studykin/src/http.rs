//! Axum router for the JSON API.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::{header, StatusCode};
use axum::response::{Html, IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use serde::Serialize;

use studykin_core::{ErrorCode, DEFAULT_TOL};

use crate::api::{self, ApiError, EvaluateRequest, ExcursionRequest, OptimizeRequest, SceneBody};
use crate::store::{Scene, Store, StoreError};

pub const PORT_ENV: &str = "STUDYKIN_PORT";
pub const DEFAULT_PORT: u16 = 8787;

#[derive(Debug)]
pub enum HttpError {
    Api(ApiError),
    /// Storage or runtime failure; not part of the API error codes.
    Internal(String),
}

impl From<ApiError> for HttpError {
    fn from(e: ApiError) -> Self {
        HttpError::Api(e)
    }
}

impl From<StoreError> for HttpError {
    fn from(e: StoreError) -> Self {
        match e {
            StoreError::NotFound(_) | StoreError::BadId(_) => {
                HttpError::Api(ApiError::not_found(e.to_string()))
            }
            StoreError::Io(_) | StoreError::Corrupt(..) => HttpError::Internal(e.to_string()),
        }
    }
}

fn json_response(status: StatusCode, body: String) -> Response {
    (status, [(header::CONTENT_TYPE, "application/json")], body).into_response()
}

impl IntoResponse for HttpError {
    fn into_response(self) -> Response {
        match self {
            HttpError::Api(e) => {
                let status = if e.code == ErrorCode::NotFound {
                    StatusCode::NOT_FOUND
                } else {
                    StatusCode::BAD_REQUEST
                };
                json_response(status, api::to_json(&e))
            }
            HttpError::Internal(message) => json_response(
                StatusCode::INTERNAL_SERVER_ERROR,
                api::to_json(&serde_json::json!({ "message": message })),
            ),
        }
    }
}

type HttpResult = Result<Response, HttpError>;

fn ok<T: Serialize>(v: &T) -> HttpResult {
    Ok(json_response(StatusCode::OK, api::to_json(v)))
}

/// Empty bodies fall back to the request type's defaults.
fn parse_or_default<T: for<'de> serde::Deserialize<'de> + Default>(
    body: &[u8],
) -> Result<T, ApiError> {
    if body.iter().all(u8::is_ascii_whitespace) {
        Ok(T::default())
    } else {
        api::parse(body)
    }
}

#[derive(Clone)]
pub struct AppState {
    store: Store,
    locks: Arc<Mutex<HashMap<String, Arc<tokio::sync::Mutex<()>>>>>,
}

impl AppState {
    pub fn new(store: Store) -> Self {
        AppState {
            store,
            locks: Arc::default(),
        }
    }

    fn lock_for(&self, id: &str) -> Arc<tokio::sync::Mutex<()>> {
        let mut map = self.locks.lock().expect("lock table poisoned");
        map.entry(id.to_string()).or_default().clone()
    }
}

async fn blocking<T: Send + 'static>(
    f: impl FnOnce() -> T + Send + 'static,
) -> Result<T, HttpError> {
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| HttpError::Internal(format!("worker failed: {e}")))
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/", get(index))
        .route("/scenes", post(create_scene).get(list_scenes))
        .route("/scenes/{id}", get(get_scene).put(put_scene))
        .route("/scenes/{id}/evaluate", post(evaluate))
        .route("/scenes/{id}/excursion", post(excursion))
        .route("/scenes/{id}/optimize", post(optimize))
        .route("/classify", post(classify))
        .route("/psh", post(psh))
        .route("/project", post(project))
        .route("/act", post(act))
        .route("/darboux", post(darboux))
        .route("/complex/members", post(complex_members))
        .route("/complex/contains", post(complex_contains))
        .route("/complex/axis", post(complex_axis))
        .route("/complex/relative", post(complex_relative))
        .with_state(state)
}

async fn index() -> Html<&'static str> {
    Html(
        "<!doctype html><html><head><title>studykin</title></head><body>\
         <h1>studykin</h1><p>JSON API is running. See docs/api.md for endpoints.</p></body></html>",
    )
}

async fn create_scene(State(st): State<AppState>, body: Bytes) -> HttpResult {
    let scene = api::parse::<SceneBody>(&body)?.validate(DEFAULT_TOL)?;
    let store = st.store.clone();
    let s = blocking(move || store.create(scene)).await??;
    Ok(json_response(StatusCode::CREATED, api::to_json(&s)))
}

async fn list_scenes(State(st): State<AppState>) -> HttpResult {
    let store = st.store.clone();
    ok(&blocking(move || store.list()).await??)
}

async fn load(st: &AppState, id: String) -> Result<Scene, HttpError> {
    let store = st.store.clone();
    Ok(blocking(move || store.load(&id)).await??)
}

async fn get_scene(State(st): State<AppState>, Path(id): Path<String>) -> HttpResult {
    ok(&load(&st, id).await?)
}

async fn put_scene(State(st): State<AppState>, Path(id): Path<String>, body: Bytes) -> HttpResult {
    let scene = api::parse::<SceneBody>(&body)?.validate(DEFAULT_TOL)?;
    let lock = st.lock_for(&id);
    let _guard = lock.lock().await;
    let store = st.store.clone();
    ok(&blocking(move || store.update(&id, scene)).await??)
}

async fn evaluate(State(st): State<AppState>, Path(id): Path<String>, body: Bytes) -> HttpResult {
    let req: EvaluateRequest = parse_or_default(&body)?;
    let s = load(&st, id).await?;
    ok(&blocking(move || api::evaluate_op(&s.scene.cs, &req)).await??)
}

async fn excursion(State(st): State<AppState>, Path(id): Path<String>, body: Bytes) -> HttpResult {
    let req: ExcursionRequest = parse_or_default(&body)?;
    let s = load(&st, id).await?;
    ok(&blocking(move || api::excursion_op(&s.scene.cs, &req)).await??)
}

async fn optimize(State(st): State<AppState>, Path(id): Path<String>, body: Bytes) -> HttpResult {
    let req: OptimizeRequest = api::parse(&body)?;
    let lock = st.lock_for(&id);
    let _guard = lock.lock().await;
    let s = load(&st, id.clone()).await?;
    let persist = req.persist;
    let cs = s.scene.cs.clone();
    let outcome = blocking(move || api::optimize_op(&cs, &req)).await??;
    if persist && outcome.after < outcome.before {
        let store = st.store.clone();
        let mut scene = s.scene;
        scene.cs = outcome.cs.clone();
        blocking(move || store.update(&id, scene)).await??;
    }
    ok(&outcome)
}

macro_rules! stateless {
    ($name:ident, $req:ty, $op:path) => {
        async fn $name(body: Bytes) -> HttpResult {
            let req: $req = api::parse(&body)?;
            ok(&blocking(move || $op(&req)).await??)
        }
    };
}

stateless!(classify, api::ClassifyRequest, api::classify_op);
stateless!(psh, api::DqRequest, api::psh_op);
stateless!(project, api::DqRequest, api::project_op);
stateless!(act, api::ActRequest, api::act_op);
stateless!(darboux, api::DarbouxRequest, api::darboux_op);
stateless!(
    complex_members,
    api::MembersRequest,
    api::complex_members_op
);
stateless!(
    complex_contains,
    api::ContainsRequest,
    api::complex_contains_op
);
stateless!(complex_axis, api::PoleRequest, api::complex_axis_op);
stateless!(
    complex_relative,
    api::ContainsRequest,
    api::complex_relative_op
);

/// Port from `$STUDYKIN_PORT`, else [`DEFAULT_PORT`].
pub fn port_from_env() -> Result<u16, String> {
    match std::env::var(PORT_ENV) {
        Ok(v) => v
            .parse()
            .map_err(|_| format!("{PORT_ENV}={v:?} is not a port number")),
        Err(_) => Ok(DEFAULT_PORT),
    }
}

pub async fn serve(store: Store, addr: std::net::SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(AppState::new(store))).await
}
