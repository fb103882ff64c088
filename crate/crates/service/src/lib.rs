//! JSON-over-HTTP service for playing the Erdős–Szekeres on-line game
//! against an engine strategy.
//!
//! | route                     | body / query                          |
//! |---------------------------|---------------------------------------|
//! | `POST /games`             | `{kind, m, k, human, engine, seed?}`  |
//! | `POST /games/{id}/moves`  | `{column}` or `{row}` or `{tier}`     |
//! | `GET /games/{id}`         |                                       |
//! | `GET /games/{id}/hint`    | `?strategy=ID&budget=SECS`            |
//! | `GET /solve`              | `?game=a&m=M&k=K&budget=SECS`         |
//!
//! Errors are `{"error": message}` with status 404 (unknown game), 409
//! (game over, or a move for the other side) or 422 (invalid request).

pub mod session;

use std::collections::HashMap;
use std::net::SocketAddr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};
use std::time::Duration;

use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use eso_core::game::{GameKind, Rules};
use eso_core::solver::{Budget, Outcome, Solver};
use eso_core::strategy::StrategyRegistry;
use serde::{Deserialize, Serialize};
use tower_http::cors::CorsLayer;

pub use session::{
    CreateGame, Hint, HintSource, MoveResponse, Play, Session, SessionError, Side, StateView,
    Status,
};

/// Default bind address when neither a flag nor `ESO_ADDR` is given.
pub const DEFAULT_ADDR: &str = "127.0.0.1:8080";

#[derive(Debug, Clone, Copy)]
pub struct Config {
    /// Solver time per hint before falling back to a strategy.
    pub hint_budget: Duration,
    /// Solver time for `/solve` when the query gives none.
    pub solve_budget: Duration,
    /// Upper limit on any client-requested budget.
    pub max_budget: Duration,
    /// Time an optimal engine may take to solve the game at creation.
    pub optimal_budget: Duration,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            hint_budget: Duration::from_millis(500),
            solve_budget: Duration::from_secs(2),
            max_budget: Duration::from_secs(30),
            optimal_budget: Duration::from_secs(2),
        }
    }
}

impl Config {
    fn budget(&self, requested: Option<f64>, default: Duration) -> Result<Duration, ApiError> {
        match requested {
            None => Ok(default),
            Some(s) if s.is_finite() && s > 0.0 => {
                Ok(Duration::from_secs_f64(s).min(self.max_budget))
            }
            Some(s) => Err(ApiError::invalid(format!(
                "budget must be a positive number of seconds, got {s}"
            ))),
        }
    }
}

/// Shared state: sessions, one solver per rule set, the strategy registry.
#[derive(Clone)]
pub struct AppState {
    inner: Arc<Inner>,
}

struct Inner {
    config: Config,
    registry: StrategyRegistry,
    sessions: Mutex<HashMap<String, Arc<Mutex<Session>>>>,
    solvers: Mutex<HashMap<Rules, Arc<Mutex<Solver>>>>,
    next_id: AtomicU64,
}

impl AppState {
    pub fn new(config: Config) -> Self {
        AppState {
            inner: Arc::new(Inner {
                config,
                registry: StrategyRegistry::standard(),
                sessions: Mutex::new(HashMap::new()),
                solvers: Mutex::new(HashMap::new()),
                next_id: AtomicU64::new(1),
            }),
        }
    }

    fn session(&self, id: &str) -> Result<Arc<Mutex<Session>>, ApiError> {
        let sessions = self.inner.sessions.lock().expect("session map poisoned");
        sessions
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, format!("no game {id:?}")))
    }

    fn solver(&self, rules: Rules) -> Arc<Mutex<Solver>> {
        let mut solvers = self.inner.solvers.lock().expect("solver map poisoned");
        solvers
            .entry(rules)
            .or_insert_with(|| Arc::new(Mutex::new(Solver::new(rules))))
            .clone()
    }
}

impl Default for AppState {
    fn default() -> Self {
        Self::new(Config::default())
    }
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    message: String,
}

impl ApiError {
    fn new(status: StatusCode, message: impl Into<String>) -> Self {
        ApiError {
            status,
            message: message.into(),
        }
    }

    fn invalid(message: impl Into<String>) -> Self {
        Self::new(StatusCode::UNPROCESSABLE_ENTITY, message)
    }
}

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        let status = match e {
            SessionError::Invalid(_) => StatusCode::UNPROCESSABLE_ENTITY,
            SessionError::Conflict(_) => StatusCode::CONFLICT,
            SessionError::Engine(_) => StatusCode::INTERNAL_SERVER_ERROR,
        };
        ApiError::new(status, e.to_string())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (
            self.status,
            Json(serde_json::json!({ "error": self.message })),
        )
            .into_response()
    }
}

/// Runs CPU-bound work off the async executor.
async fn blocking<T: Send + 'static>(
    f: impl FnOnce() -> T + Send + 'static,
) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/games", post(create_game))
        .route("/games/{id}", get(get_game))
        .route("/games/{id}/moves", post(post_move))
        .route("/games/{id}/hint", get(get_hint))
        .route("/solve", get(solve))
        .layer(CorsLayer::permissive())
        .with_state(state)
}

async fn create_game(
    State(state): State<AppState>,
    Json(req): Json<CreateGame>,
) -> Result<impl IntoResponse, ApiError> {
    let id = format!("g{}", state.inner.next_id.fetch_add(1, Ordering::Relaxed));
    let st = state.clone();
    let session = blocking(move || {
        Session::create(id, &req, &st.inner.registry, st.inner.config.optimal_budget)
    })
    .await??;
    let view = session.view();
    state
        .inner
        .sessions
        .lock()
        .expect("session map poisoned")
        .insert(session.id().to_string(), Arc::new(Mutex::new(session)));
    Ok((StatusCode::CREATED, Json(view)))
}

async fn get_game(
    State(state): State<AppState>,
    Path(id): Path<String>,
) -> Result<Json<StateView>, ApiError> {
    let session = state.session(&id)?;
    let view = session.lock().expect("session poisoned").view();
    Ok(Json(view))
}

async fn post_move(
    State(state): State<AppState>,
    Path(id): Path<String>,
    Json(play): Json<Play>,
) -> Result<Json<MoveResponse>, ApiError> {
    let session = state.session(&id)?;
    // the engine may search: play the turn on a blocking thread, holding the
    // session so moves on one game are serialized
    blocking(move || {
        let mut s = session.lock().expect("session poisoned");
        let engine = s.play(&play)?;
        Ok(MoveResponse {
            engine,
            state: s.view(),
        })
    })
    .await?
    .map(Json)
    .map_err(|e: SessionError| e.into())
}

#[derive(Debug, Deserialize)]
struct HintQuery {
    strategy: Option<String>,
    budget: Option<f64>,
}

async fn get_hint(
    State(state): State<AppState>,
    Path(id): Path<String>,
    Query(q): Query<HintQuery>,
) -> Result<Json<Hint>, ApiError> {
    let session = state.session(&id)?;
    let request = session::HintRequest::of(&session.lock().expect("session poisoned"))?;
    let budget = state
        .inner
        .config
        .budget(q.budget, state.inner.config.hint_budget)?;
    let solver = state.solver(request.rules);
    let st = state.clone();
    let hint = blocking(move || {
        let optimal = {
            let mut solver = solver.lock().expect("solver poisoned");
            request.optimal(&mut solver, budget)
        };
        match optimal {
            Ok(Some(hint)) => Ok(hint),
            Ok(None) => request
                .from_strategy(&st.inner.registry, q.strategy.as_deref())
                .map_err(ApiError::from),
            Err(e) => Err(ApiError::new(
                StatusCode::INTERNAL_SERVER_ERROR,
                e.to_string(),
            )),
        }
    })
    .await??;
    Ok(Json(hint))
}

#[derive(Debug, Deserialize)]
struct SolveQuery {
    game: String,
    m: usize,
    k: usize,
    budget: Option<f64>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SolveResponse {
    pub game: GameKind,
    pub m: usize,
    pub k: usize,
    #[serde(flatten)]
    pub outcome: Outcome,
}

async fn solve(
    State(state): State<AppState>,
    Query(q): Query<SolveQuery>,
) -> Result<Json<SolveResponse>, ApiError> {
    let kind: GameKind = q
        .game
        .parse()
        .map_err(|e: eso_core::game::GameError| ApiError::invalid(e.to_string()))?;
    let rules = Rules::new(kind, q.m, q.k).map_err(|e| ApiError::invalid(e.to_string()))?;
    let budget = state
        .inner
        .config
        .budget(q.budget, state.inner.config.solve_budget)?;
    let solver = state.solver(rules);
    let outcome = blocking(move || {
        solver.lock().expect("solver poisoned").solve(
            &[],
            Budget {
                time: Some(budget),
                nodes: None,
            },
        )
    })
    .await?
    .map_err(|e| ApiError::invalid(e.to_string()))?;
    Ok(Json(SolveResponse {
        game: kind,
        m: q.m,
        k: q.k,
        outcome,
    }))
}

/// Binds `addr` and serves until the process is stopped.
pub async fn serve(addr: SocketAddr, config: Config) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(AppState::new(config))).await
}
