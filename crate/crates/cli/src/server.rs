//! JSON-over-HTTP service. Sessions hold a seed and, for type-A quivers, the
//! cluster-tilting object mutated in lockstep with it.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use clusterchar::artype_a::{knit, IndecObject};
use clusterchar::charcat::{ct_mutate, CCTable, CTObject, CharContext};
use clusterchar::clusteralg::{mutate_seed, Seed};
use clusterchar::fpoly::f_polynomial;
use clusterchar::grass::grass_table;
use clusterchar::quiver::Quiver;
use clusterchar::rep::Representation;
use clusterchar::Error;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::app::int_json;

/// Static data for one quiver.
struct Workbench {
    quiver: Quiver,
    /// character context and table; type A only
    chars: Option<(CharContext, CCTable)>,
}

impl Workbench {
    fn new(quiver: Quiver) -> Result<Self, Error> {
        quiver.validate_mutable()?;
        let chars = if quiver.is_type_a() {
            let ctx = CharContext::new(&quiver)?;
            let table = CCTable::build(&ctx)?;
            Some((ctx, table))
        } else {
            None
        };
        Ok(Workbench { quiver, chars })
    }
}

struct Session {
    bench: Arc<Workbench>,
    seed: Seed,
    ct: Option<CTObject>,
    history: Vec<usize>,
}

impl Session {
    fn new(bench: Arc<Workbench>) -> Result<Self, Error> {
        let seed = Seed::initial(&bench.quiver)?;
        let ct = bench.chars.as_ref().map(|_| CTObject::initial(&bench.quiver)).transpose()?;
        Ok(Session { bench, seed, ct, history: Vec::new() })
    }

    /// Mutates seed and mirror together; on error neither changes.
    fn mutate(&mut self, vertex: usize) -> Result<(), Error> {
        self.bench.quiver.check_vertex(vertex)?;
        let seed = mutate_seed(&self.seed, vertex)?;
        let ct = match (&self.ct, &self.bench.chars) {
            (Some(r), Some((_, table))) => Some(ct_mutate(r, vertex, table)?),
            _ => None,
        };
        self.seed = seed;
        self.ct = ct;
        self.history.push(vertex);
        Ok(())
    }

    fn view(&self, id: &str) -> Value {
        let ct = match (&self.ct, &self.bench.chars) {
            (Some(r), Some((ctx, table))) => {
                let summands: Vec<Value> = r
                    .summands
                    .iter()
                    .map(|x| {
                        let e = table.get(x).expect("summands come from the table");
                        json!({"id": e.id, "label": ctx.ar().label(x), "index": e.index, "cc": e.cc, "fraction": e.fraction})
                    })
                    .collect();
                json!({"summands": summands, "quiver": r.quiver})
            }
            _ => Value::Null,
        };
        json!({
            "id": id,
            "initial_quiver": self.bench.quiver,
            "history": self.history,
            "depth": self.history.len(),
            "seed": self.seed,
            "ct_object": ct,
        })
    }
}

#[derive(Clone)]
pub struct AppState {
    base: Arc<Workbench>,
    benches: Arc<Mutex<HashMap<String, Arc<Workbench>>>>,
    sessions: Arc<Mutex<HashMap<String, Arc<Mutex<Session>>>>>,
}

impl AppState {
    pub fn new(quiver: Quiver) -> Result<Self, Error> {
        let base = Arc::new(Workbench::new(quiver)?);
        let benches = HashMap::from([(base.quiver.to_json(), base.clone())]);
        Ok(AppState { base, benches: Arc::new(Mutex::new(benches)), sessions: Arc::default() })
    }

    fn bench(&self, quiver: Quiver) -> Result<Arc<Workbench>, Error> {
        let key = quiver.to_json();
        if let Some(b) = self.benches.lock().unwrap().get(&key) {
            return Ok(b.clone());
        }
        let b = Arc::new(Workbench::new(quiver)?);
        Ok(self.benches.lock().unwrap().entry(key).or_insert(b).clone())
    }

    fn session(&self, id: &str) -> Result<Arc<Mutex<Session>>, ApiError> {
        self.sessions.lock().unwrap().get(id).cloned().ok_or_else(|| ApiError::not_found(id))
    }

    fn insert(&self, s: Session) -> Value {
        let id = uuid::Uuid::new_v4().to_string();
        let view = s.view(&id);
        self.sessions.lock().unwrap().insert(id, Arc::new(Mutex::new(s)));
        view
    }
}

pub struct ApiError {
    status: StatusCode,
    body: Value,
}

impl ApiError {
    fn not_found(id: &str) -> Self {
        ApiError { status: StatusCode::NOT_FOUND, body: json!({"error": "not_found", "message": format!("no session `{id}`")}) }
    }

    fn bad_request(msg: impl Into<String>) -> Self {
        ApiError { status: StatusCode::BAD_REQUEST, body: json!({"error": "bad_request", "message": msg.into()}) }
    }
}

/// 409 for failed exchanges, 400 for everything caused by the request.
pub fn status_for(e: &Error) -> StatusCode {
    match e {
        Error::NotDivisible { .. } | Error::NotInTable(_) => StatusCode::CONFLICT,
        Error::IdentityFailed(_) | Error::CollisionDetected(..) => StatusCode::INTERNAL_SERVER_ERROR,
        _ => StatusCode::BAD_REQUEST,
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let kind = match &e {
            Error::NotDivisible { .. } => "not_divisible",
            Error::NotInTable(_) => "not_in_table",
            _ => "invalid",
        };
        ApiError { status: status_for(&e), body: json!({"error": kind, "message": e.to_string()}) }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self.body)).into_response()
    }
}

type ApiResult = Result<Json<Value>, ApiError>;

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/quiver", get(get_quiver))
        .route("/session", post(create_session))
        .route("/session/import", post(import_session))
        .route("/session/{id}", get(get_session))
        .route("/session/{id}/mutate", post(mutate))
        .route("/session/{id}/snapshot", get(snapshot))
        .route("/ar-quiver", get(ar_quiver))
        .route("/cc-table", get(cc_table))
        .route("/grassmannian", get(grassmannian))
        .with_state(state)
}

pub fn serve(quiver: Quiver, host: &str, port: u16) -> std::io::Result<()> {
    let state = AppState::new(quiver).map_err(std::io::Error::other)?;
    let rt = tokio::runtime::Runtime::new()?;
    rt.block_on(async {
        let listener = tokio::net::TcpListener::bind((host, port)).await?;
        eprintln!("listening on http://{}", listener.local_addr()?);
        axum::serve(listener, router(state)).await
    })
}

async fn get_quiver(State(st): State<AppState>) -> ApiResult {
    let b = st.base.quiver.b_matrix()?;
    Ok(Json(json!({"quiver": st.base.quiver, "b_matrix": b, "type_a": st.base.chars.is_some()})))
}

fn parse_json<T: serde::de::DeserializeOwned>(body: &Bytes) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError::bad_request(e.to_string()))
}

/// Body: a quiver document, or empty for the server's quiver.
async fn create_session(State(st): State<AppState>, body: Bytes) -> ApiResult {
    let bench = if body.iter().all(u8::is_ascii_whitespace) {
        st.base.clone()
    } else {
        st.bench(parse_json::<Quiver>(&body)?)?
    };
    Ok(Json(st.insert(Session::new(bench)?)))
}

async fn get_session(State(st): State<AppState>, Path(id): Path<String>) -> ApiResult {
    let s = st.session(&id)?;
    let view = s.lock().unwrap().view(&id);
    Ok(Json(view))
}

#[derive(Deserialize)]
struct MutateBody {
    vertex: usize,
}

async fn mutate(State(st): State<AppState>, Path(id): Path<String>, body: Bytes) -> ApiResult {
    let s = st.session(&id)?;
    let MutateBody { vertex } = parse_json(&body)?;
    let mut guard = s.lock().unwrap();
    guard.mutate(vertex)?;
    Ok(Json(guard.view(&id)))
}

#[derive(Deserialize)]
struct Snapshot {
    quiver: Quiver,
    history: Vec<usize>,
}

async fn snapshot(State(st): State<AppState>, Path(id): Path<String>) -> ApiResult {
    let s = st.session(&id)?;
    let guard = s.lock().unwrap();
    Ok(Json(json!({"quiver": guard.bench.quiver, "history": guard.history})))
}

/// Replays a snapshot into a fresh session.
async fn import_session(State(st): State<AppState>, body: Bytes) -> ApiResult {
    let snap: Snapshot = parse_json(&body)?;
    let mut s = Session::new(st.bench(snap.quiver)?)?;
    for v in snap.history {
        s.mutate(v)?;
    }
    Ok(Json(st.insert(s)))
}

#[derive(Deserialize)]
struct SessionQuery {
    session: Option<String>,
}

fn bench_for(st: &AppState, session: Option<&str>) -> Result<Arc<Workbench>, ApiError> {
    match session {
        Some(id) => Ok(st.session(id)?.lock().unwrap().bench.clone()),
        None => Ok(st.base.clone()),
    }
}

async fn ar_quiver(State(st): State<AppState>, Query(q): Query<SessionQuery>) -> ApiResult {
    let bench = bench_for(&st, q.session.as_deref())?;
    Ok(Json(serde_json::to_value(knit(&bench.quiver)?.document()).expect("serializable")))
}

async fn cc_table(State(st): State<AppState>, Query(q): Query<SessionQuery>) -> ApiResult {
    let bench = bench_for(&st, q.session.as_deref())?;
    let (_, table) = bench.chars.as_ref().ok_or(Error::NotTypeA)?;
    Ok(Json(json!({"n": table.n(), "entries": table.entries()})))
}

#[derive(Deserialize)]
struct GrassQuery {
    rep: String,
    session: Option<String>,
}

/// `rep` is a representation document or an object id such as `[1,3]`.
async fn grassmannian(State(st): State<AppState>, Query(q): Query<GrassQuery>) -> ApiResult {
    let rep = if q.rep.trim_start().starts_with('{') {
        Representation::from_json(&q.rep)?
    } else {
        let bench = bench_for(&st, q.session.as_deref())?;
        let x: IndecObject = q.rep.parse()?;
        x.check(bench.quiver.n())?;
        match x {
            IndecObject::Module(iv) => iv.module(&bench.quiver)?,
            IndecObject::ShiftedProjective { .. } => Representation::zero(bench.quiver.opposite()),
        }
    };
    let out = tokio::task::spawn_blocking(move || -> Result<Value, Error> {
        let table = grass_table(&rep)?;
        let f = f_polynomial(&rep)?;
        let rows: Vec<Value> = table.iter().map(|(e, chi)| json!({"e": e, "chi": int_json(&chi.to_string())})).collect();
        Ok(json!({"dims": rep.dims(), "table": rows, "fpoly": f.to_string()}))
    })
    .await
    .map_err(|e| ApiError::bad_request(e.to_string()))??;
    Ok(Json(out))
}
