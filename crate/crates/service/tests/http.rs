use axum::body::Body;
use axum::http::{Method, Request, StatusCode};
use axum::Router;
use eso_service::{router, AppState, StateView};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

async fn call(app: &Router, method: Method, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let request = Request::builder().method(method).uri(uri);
    let request = match body {
        Some(b) => request
            .header("content-type", "application/json")
            .body(Body::from(b.to_string())),
        None => request.body(Body::empty()),
    }
    .unwrap();
    let response = app.clone().oneshot(request).await.unwrap();
    let status = response.status();
    let bytes = response.into_body().collect().await.unwrap().to_bytes();
    let value = if bytes.is_empty() {
        Value::Null
    } else {
        serde_json::from_slice(&bytes).unwrap()
    };
    (status, value)
}

async fn create(app: &Router, body: Value) -> Value {
    let (status, view) = call(app, Method::POST, "/games", Some(body)).await;
    assert_eq!(status, StatusCode::CREATED, "{view}");
    view
}

/// Every state view must equal what its own transcript replays to.
fn assert_replayable(view: &Value) {
    let parsed: StateView = serde_json::from_value(view.clone()).unwrap();
    let board = parsed.transcript.replay().unwrap();
    assert_eq!(board.ys(), parsed.points.as_slice());
    assert_eq!(board.ids(), parsed.played_at.as_slice());
    assert_eq!(parsed.turn, parsed.transcript.moves.len());
    assert_eq!(parsed.transcript.v, 1);
}

#[tokio::test]
async fn optimal_play_on_three_three_lasts_four_turns() {
    let app = router(AppState::default());
    let view = create(
        &app,
        json!({"kind": "A", "m": 3, "k": 3, "human": "A", "engine": "b:optimal"}),
    )
    .await;
    let id = view["id"].as_str().unwrap().to_string();

    let (status, hint) = call(&app, Method::GET, &format!("/games/{id}/hint"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(hint["source"], "optimal");
    assert_eq!(hint["value"], 4);

    let mut last = view;
    while last["status"] == "in-progress" {
        let (_, hint) = call(&app, Method::GET, &format!("/games/{id}/hint"), None).await;
        let (status, response) = call(
            &app,
            Method::POST,
            &format!("/games/{id}/moves"),
            Some(hint["move"].clone()),
        )
        .await;
        assert_eq!(status, StatusCode::OK, "{response}");
        assert!(response["engine"]["row"].is_u64());
        assert_replayable(&response["state"]);
        last = response["state"].clone();
    }
    assert_eq!(last["turn"], 4);
    assert_eq!(last["status"], "over");
    assert!(last["cause"].is_string());

    let (status, fetched) = call(&app, Method::GET, &format!("/games/{id}"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(fetched, last);
}

#[tokio::test]
async fn human_b_against_combined_ends_by_turn_nine() {
    let app = router(AppState::default());
    for seed in 0..20u64 {
        let view = create(
            &app,
            json!({"kind": "A", "m": 5, "k": 3, "human": "B", "engine": "a:combined"}),
        )
        .await;
        let id = view["id"].as_str().unwrap().to_string();
        assert_eq!(view["awaiting"], "row");
        let mut state = view;
        let mut turn = 0u64;
        while state["status"] == "in-progress" {
            let rows = state["turn"].as_u64().unwrap() + 1;
            let row = (seed * 7 + turn * 3) % rows;
            let (status, response) = call(
                &app,
                Method::POST,
                &format!("/games/{id}/moves"),
                Some(json!({"row": row})),
            )
            .await;
            assert_eq!(status, StatusCode::OK, "{response}");
            assert_replayable(&response["state"]);
            state = response["state"].clone();
            turn += 1;
        }
        assert!(state["turn"].as_u64().unwrap() <= 9, "{state}");
    }
}

#[tokio::test]
async fn hint_on_the_empty_board_reports_the_game_value() {
    let app = router(AppState::default());
    let view = create(
        &app,
        json!({"kind": "A", "m": 3, "k": 3, "human": "A", "engine": "b:random"}),
    )
    .await;
    let (status, hint) = call(
        &app,
        Method::GET,
        &format!("/games/{}/hint", view["id"].as_str().unwrap()),
        None,
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(hint["value"], 4);
    assert_eq!(hint["move"]["column"], 0);
}

#[tokio::test]
async fn large_games_fall_back_to_the_strategy() {
    let app = router(AppState::default());
    let view = create(
        &app,
        json!({"kind": "A", "m": 12, "k": 3, "human": "A", "engine": "b:fracturing"}),
    )
    .await;
    let id = view["id"].as_str().unwrap();
    let (status, hint) = call(
        &app,
        Method::GET,
        &format!("/games/{id}/hint?budget=0.05"),
        None,
    )
    .await;
    assert_eq!(status, StatusCode::OK, "{hint}");
    assert_eq!(hint["source"], "strategy");
    assert_eq!(hint["strategy"], "a:combined");
    assert!(hint.get("value").is_none());
}

#[tokio::test]
async fn error_statuses() {
    let app = router(AppState::default());
    let (status, body) = call(&app, Method::GET, "/games/nope", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert!(body["error"].is_string());
    let (status, _) = call(
        &app,
        Method::POST,
        "/games/nope/moves",
        Some(json!({"column": 0})),
    )
    .await;
    assert_eq!(status, StatusCode::NOT_FOUND);

    let (status, _) = call(
        &app,
        Method::POST,
        "/games",
        Some(json!({"kind": "A", "m": 3, "k": 3, "human": "A", "engine": "a:combined"})),
    )
    .await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    let (status, _) = call(
        &app,
        Method::POST,
        "/games",
        Some(json!({"kind": "A", "m": 3, "k": 3, "human": "A", "engine": "b:nosuch"})),
    )
    .await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);

    let view = create(
        &app,
        json!({"kind": "B", "m": 3, "k": 3, "human": "A", "engine": "b:tiers"}),
    )
    .await;
    let id = view["id"].as_str().unwrap().to_string();
    let moves = format!("/games/{id}/moves");
    assert_eq!(
        call(&app, Method::POST, &moves, Some(json!({"column": 5})))
            .await
            .0,
        StatusCode::UNPROCESSABLE_ENTITY
    );
    assert_eq!(
        call(&app, Method::POST, &moves, Some(json!({}))).await.0,
        StatusCode::UNPROCESSABLE_ENTITY
    );
    assert_eq!(
        call(&app, Method::POST, &moves, Some(json!({"tier": 1})))
            .await
            .0,
        StatusCode::CONFLICT
    );
    assert_eq!(
        call(&app, Method::POST, &moves, Some(json!({"row": 0})))
            .await
            .0,
        StatusCode::UNPROCESSABLE_ENTITY
    );

    let mut state = view;
    while state["status"] == "in-progress" {
        let (status, response) = call(&app, Method::POST, &moves, Some(json!({"column": 0}))).await;
        assert_eq!(status, StatusCode::OK);
        state = response["state"].clone();
    }
    assert_eq!(
        call(&app, Method::POST, &moves, Some(json!({"column": 0})))
            .await
            .0,
        StatusCode::CONFLICT
    );
    assert_eq!(
        call(&app, Method::GET, &format!("/games/{id}/hint"), None)
            .await
            .0,
        StatusCode::CONFLICT
    );
}

#[tokio::test]
async fn solve_endpoint() {
    let app = router(AppState::default());
    let (status, body) = call(&app, Method::GET, "/solve?game=a&m=4&k=3", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(
        body,
        json!({"game": "A", "m": 4, "k": 3, "status": "exact", "value": 6})
    );
    let (_, body) = call(&app, Method::GET, "/solve?game=b&m=5&k=3", None).await;
    assert_eq!(body["value"], 5);
    let (_, body) = call(&app, Method::GET, "/solve?game=a&m=9&k=5&budget=0.05", None).await;
    assert_eq!(body["status"], "bounds");
    assert!(body["lo"].as_u64().unwrap() <= body["hi"].as_u64().unwrap());
    let (status, _) = call(&app, Method::GET, "/solve?game=c&m=4&k=3", None).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
}

#[tokio::test]
async fn engine_replies_are_deterministic() {
    let app = router(AppState::default());
    let mut transcripts = Vec::new();
    for _ in 0..2 {
        let view = create(
            &app,
            json!({"kind": "A", "m": 6, "k": 3, "human": "A", "engine": "b:random", "seed": 11}),
        )
        .await;
        let id = view["id"].as_str().unwrap().to_string();
        let mut state = view;
        while state["status"] == "in-progress" {
            let column = state["turn"].as_u64().unwrap() / 2;
            let (_, response) = call(
                &app,
                Method::POST,
                &format!("/games/{id}/moves"),
                Some(json!({"column": column})),
            )
            .await;
            state = response["state"].clone();
        }
        transcripts.push(state["transcript"].clone());
    }
    assert_eq!(transcripts[0], transcripts[1]);
    assert_eq!(transcripts[0]["strategies"]["b"], "b:random(11)");
}

#[tokio::test]
async fn cors_is_permissive() {
    let app = router(AppState::default());
    let request = Request::builder()
        .method(Method::OPTIONS)
        .uri("/games")
        .header("origin", "http://localhost:5173")
        .header("access-control-request-method", "POST")
        .body(Body::empty())
        .unwrap();
    let response = app.oneshot(request).await.unwrap();
    assert_eq!(response.headers()["access-control-allow-origin"], "*");
}
