//! HTTP API for interactive mutation sessions, served under `/api/v1`.
//!
//! Sessions live in memory. Each holds its start object and a history of
//! mutations; the current object is always the replay of that history.

use std::collections::{BTreeMap, HashMap};
use std::net::SocketAddr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};

use silt_core::derived::{StalkSum, SummandJson};
use silt_core::endo::{summarize, EndoAlgebra, EndoSummary};
use silt_core::export::SCHEMA_VERSION;
use silt_core::instance::Instance;
use silt_core::quiver::{catalogue, Quiver};
use silt_core::silting::{in_domain, is_rigid, is_silting_in_domain, mutate, Direction};
use silt_core::Error;

#[derive(Debug, Serialize)]
pub struct ApiError {
    #[serde(skip)]
    status: StatusCode,
    pub code: String,
    pub message: String,
}

impl ApiError {
    fn new(status: StatusCode, code: &str, message: impl Into<String>) -> Self {
        ApiError { status, code: code.into(), message: message.into() }
    }

    fn unprocessable(code: &str, message: impl Into<String>) -> Self {
        Self::new(StatusCode::UNPROCESSABLE_ENTITY, code, message)
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::UnknownQuiver(_) | Error::Orientation(_) => "invalid_instance",
            Error::Parse(_) | Error::UnknownIndecomposable(_) => "invalid_object",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::NotSilting(_) => "not_silting",
            Error::Internal(_) => {
                return Self::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", e.to_string());
            }
            _ => "invalid_argument",
        };
        Self::unprocessable(code, e.to_string())
    }
}

impl From<JsonRejection> for ApiError {
    fn from(e: JsonRejection) -> Self {
        Self::unprocessable("invalid_body", e.body_text())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(&self)).into_response()
    }
}

type ApiResult<T> = Result<Json<T>, ApiError>;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct StalkDoc {
    pub index: usize,
    pub name: String,
    pub id: usize,
    pub shift: i32,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ObjectDoc {
    pub name: String,
    pub summands: Vec<SummandJson>,
    pub stalks: Vec<StalkDoc>,
    pub in_s_m: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TriangleDoc {
    pub dir: Direction,
    pub x: String,
    pub b: String,
    pub y: String,
    pub text: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct StepDoc {
    pub index: usize,
    pub dir: Direction,
    pub from: String,
    pub to: String,
    pub triangle: TriangleDoc,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MoveDoc {
    pub index: usize,
    pub dir: Direction,
    pub summand: String,
    pub target: ObjectDoc,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct StateDoc {
    pub schema_version: u32,
    pub id: u64,
    pub quiver: String,
    pub m: usize,
    pub current: ObjectDoc,
    pub history: Vec<StepDoc>,
    pub endo: EndoSummary,
    pub moves: Vec<MoveDoc>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct MutateDoc {
    pub schema_version: u32,
    pub object: ObjectDoc,
    pub triangle: TriangleDoc,
    pub in_s_m: bool,
    pub endo: EndoSummary,
    pub history_len: usize,
}

#[derive(Clone, Debug)]
struct Step {
    index: usize,
    dir: Direction,
    before: StalkSum,
    after: StalkSum,
    triangle: TriangleDoc,
}

/// One exploration: a start object and the mutations taken from it.
pub struct Session {
    pub id: u64,
    inst: Arc<Instance>,
    m: usize,
    start: StalkSum,
    current: StalkSum,
    history: Vec<Step>,
}

fn object_doc(inst: &Instance, m: usize, t: &StalkSum) -> ObjectDoc {
    ObjectDoc {
        name: inst.sum_name(t),
        summands: t.to_json(),
        stalks: t
            .stalks()
            .into_iter()
            .enumerate()
            .map(|(index, s)| StalkDoc { index, name: inst.stalk_name(s), id: s.id, shift: s.shift })
            .collect(),
        in_s_m: in_domain(inst, t, m),
    }
}

impl Session {
    pub fn new(id: u64, inst: Arc<Instance>, m: usize, start: StalkSum) -> Result<Self, Error> {
        if !is_silting_in_domain(&inst, &start, m) {
            return Err(Error::NotSilting(format!("{} is not a silting object of the domain for m={m}", inst.sum_name(&start))));
        }
        Ok(Session { id, inst, m, current: start.clone(), start, history: Vec::new() })
    }

    pub fn current(&self) -> &StalkSum {
        &self.current
    }

    pub fn history_len(&self) -> usize {
        self.history.len()
    }

    fn validate(&self, t: &StalkSum) -> Result<(), Error> {
        if is_rigid(&self.inst, t) && t.is_basic() && t.distinct_count() == self.inst.rank() {
            Ok(())
        } else {
            Err(Error::Internal(format!("{} is not silting", self.inst.sum_name(t))))
        }
    }

    fn endo(&self, t: &StalkSum) -> Result<EndoSummary, Error> {
        let e = EndoAlgebra::new(&self.inst, t)?;
        Ok(summarize(&e, 2 * self.m * self.inst.rank() + 2))
    }

    pub fn mutate(&mut self, index: usize, dir: Direction) -> Result<MutateDoc, Error> {
        let (next, tri) = mutate(&self.inst, &self.current, index, dir)?;
        self.validate(&next)?;
        let inst = &self.inst;
        let triangle = TriangleDoc {
            dir,
            x: inst.stalk_name(tri.x),
            b: if tri.b.is_empty() { "0".into() } else { inst.sum_name(&tri.b) },
            y: inst.stalk_name(tri.y),
            text: tri.describe(inst),
        };
        let endo = self.endo(&next)?;
        self.history.push(Step { index, dir, before: self.current.clone(), after: next.clone(), triangle: triangle.clone() });
        self.current = next;
        let object = object_doc(&self.inst, self.m, &self.current);
        Ok(MutateDoc {
            schema_version: SCHEMA_VERSION,
            in_s_m: object.in_s_m,
            object,
            triangle,
            endo,
            history_len: self.history.len(),
        })
    }

    pub fn undo(&mut self) -> Result<(), Error> {
        let step = self.history.pop().ok_or_else(|| Error::Invalid("history is empty".into()))?;
        self.current = step.before;
        Ok(())
    }

    /// Replays the history from the start object.
    pub fn replay(&self) -> Result<StalkSum, Error> {
        let mut t = self.start.clone();
        for s in &self.history {
            t = mutate(&self.inst, &t, s.index, s.dir)?.0;
        }
        Ok(t)
    }

    pub fn state(&self) -> Result<StateDoc, Error> {
        self.validate(&self.current)?;
        let inst = &self.inst;
        let stalks = self.current.stalks();
        let mut moves = Vec::new();
        for (index, s) in stalks.iter().enumerate() {
            for dir in [Direction::Left, Direction::Right] {
                let (target, _) = mutate(inst, &self.current, index, dir)?;
                moves.push(MoveDoc {
                    index,
                    dir,
                    summand: inst.stalk_name(*s),
                    target: object_doc(inst, self.m, &target),
                });
            }
        }
        Ok(StateDoc {
            schema_version: SCHEMA_VERSION,
            id: self.id,
            quiver: inst.quiver().label(),
            m: self.m,
            current: object_doc(inst, self.m, &self.current),
            history: self
                .history
                .iter()
                .map(|s| StepDoc {
                    index: s.index,
                    dir: s.dir,
                    from: inst.sum_name(&s.before),
                    to: inst.sum_name(&s.after),
                    triangle: s.triangle.clone(),
                })
                .collect(),
            endo: self.endo(&self.current)?,
            moves,
        })
    }
}

#[derive(Default)]
struct Inner {
    sessions: Mutex<BTreeMap<u64, Arc<Mutex<Session>>>>,
    instances: Mutex<HashMap<String, Arc<Instance>>>,
    next: AtomicU64,
}

/// Shared server state: the session table and a cache of instances.
#[derive(Clone, Default)]
pub struct AppState {
    inner: Arc<Inner>,
}

impl AppState {
    pub fn new() -> Self {
        Self::default()
    }

    fn instance(&self, label: &str) -> Result<Arc<Instance>, Error> {
        let canonical = Quiver::parse(label)?.label();
        let mut cache = self.inner.instances.lock().expect("instance cache poisoned");
        if let Some(i) = cache.get(&canonical) {
            return Ok(i.clone());
        }
        let inst = Arc::new(Instance::parse(&canonical)?);
        cache.insert(canonical, inst.clone());
        Ok(inst)
    }

    fn session(&self, id: u64) -> Result<Arc<Mutex<Session>>, ApiError> {
        self.inner
            .sessions
            .lock()
            .expect("session table poisoned")
            .get(&id)
            .cloned()
            .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, "unknown_session", format!("no session {id}")))
    }
}

#[derive(Debug, Deserialize)]
pub struct CreateSession {
    pub quiver: String,
    #[serde(default = "one")]
    pub m: usize,
    /// `"regular"` (the default) or an object such as `"S1,P2[1]"`.
    #[serde(default)]
    pub start: Option<String>,
}

fn one() -> usize {
    1
}

#[derive(Debug, Deserialize)]
pub struct MutateRequest {
    pub index: usize,
    pub dir: Direction,
}

#[derive(Debug, Serialize)]
pub struct InstanceDoc {
    pub label: String,
    pub kind: String,
    pub rank: usize,
    pub positive_roots: usize,
}

/// Largest `m` accepted when creating a session.
pub const MAX_M: usize = 6;

async fn blocking<T: Send + 'static>(f: impl FnOnce() -> Result<T, ApiError> + Send + 'static) -> ApiResult<T> {
    match tokio::task::spawn_blocking(f).await {
        Ok(r) => r.map(Json),
        Err(e) => Err(ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", e.to_string())),
    }
}

async fn create_session(
    State(state): State<AppState>,
    body: Result<Json<CreateSession>, JsonRejection>,
) -> Result<(StatusCode, Json<StateDoc>), ApiError> {
    let Json(req) = body?;
    if req.m == 0 || req.m > MAX_M {
        return Err(ApiError::unprocessable("invalid_instance", format!("m must be in 1..={MAX_M}")));
    }
    let st = state.clone();
    let doc = blocking(move || {
        let inst = st.instance(&req.quiver)?;
        let start = match req.start.as_deref().map(str::trim) {
            None | Some("") | Some("regular") => inst.regular(),
            Some(name) => inst.parse_sum(name)?,
        };
        let id = st.inner.next.fetch_add(1, Ordering::SeqCst) + 1;
        let session = Session::new(id, inst, req.m, start)?;
        let doc = session.state()?;
        st.inner.sessions.lock().expect("session table poisoned").insert(id, Arc::new(Mutex::new(session)));
        Ok(doc)
    })
    .await?;
    Ok((StatusCode::CREATED, doc))
}

async fn get_session(State(state): State<AppState>, Path(id): Path<u64>) -> ApiResult<StateDoc> {
    let s = state.session(id)?;
    blocking(move || Ok(s.lock().expect("session poisoned").state()?)).await
}

async fn mutate_session(
    State(state): State<AppState>,
    Path(id): Path<u64>,
    body: Result<Json<MutateRequest>, JsonRejection>,
) -> ApiResult<MutateDoc> {
    let s = state.session(id)?;
    let Json(req) = body?;
    blocking(move || Ok(s.lock().expect("session poisoned").mutate(req.index, req.dir)?)).await
}

async fn undo_session(State(state): State<AppState>, Path(id): Path<u64>) -> ApiResult<StateDoc> {
    let s = state.session(id)?;
    blocking(move || {
        let mut s = s.lock().expect("session poisoned");
        s.undo().map_err(|e| ApiError::unprocessable("empty_history", e.to_string()))?;
        Ok(s.state()?)
    })
    .await
}

async fn instances() -> Json<Vec<InstanceDoc>> {
    Json(
        catalogue()
            .into_iter()
            .map(|t| InstanceDoc {
                label: Quiver::default_orientation(t).label(),
                kind: format!("{:?}", t.kind),
                rank: t.rank,
                positive_roots: t.positive_root_count(),
            })
            .collect(),
    )
}

pub fn router_with(state: AppState) -> Router {
    let api = Router::new()
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_session))
        .route("/sessions/{id}/mutate", post(mutate_session))
        .route("/sessions/{id}/undo", post(undo_session))
        .route("/instances", get(instances));
    Router::new().nest("/api/v1", api).with_state(state)
}

pub fn router() -> Router {
    router_with(AppState::new())
}

pub async fn serve(addr: SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router()).await
}
