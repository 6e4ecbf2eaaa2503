use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use silt_explorer::{router_with, AppState};

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let mut req = Request::builder().method(method).uri(uri);
    let body = match body {
        Some(v) => {
            req = req.header("content-type", "application/json");
            Body::from(v.to_string())
        }
        None => Body::empty(),
    };
    let resp = app.clone().oneshot(req.body(body).unwrap()).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    let value = if bytes.is_empty() { Value::Null } else { serde_json::from_slice(&bytes).unwrap() };
    (status, value)
}

fn app() -> Router {
    router_with(AppState::new())
}

fn names(v: &Value) -> Vec<String> {
    v["stalks"].as_array().unwrap().iter().map(|s| s["name"].as_str().unwrap().to_string()).collect()
}

#[tokio::test]
async fn regular_start_and_mutate_undo() {
    let app = app();
    let (st, s) = call(&app, "POST", "/api/v1/sessions", Some(json!({"quiver": "A2", "m": 1}))).await;
    assert_eq!(st, StatusCode::CREATED);
    assert_eq!(s["current"]["name"], "{P1, P2}");
    assert_eq!(s["history"].as_array().unwrap().len(), 0);
    assert_eq!(s["endo"]["arrows"], json!([[0, 0], [1, 0]]));
    let id = s["id"].as_u64().unwrap();

    let (st, m) = call(&app, "POST", &format!("/api/v1/sessions/{id}/mutate"), Some(json!({"index": 1, "dir": "left"}))).await;
    assert_eq!(st, StatusCode::OK);
    assert_eq!(m["object"]["name"], "{P1, S1}");
    assert_eq!(m["triangle"]["text"], "P2 -> P1 -> S1 -> P2[1]");
    assert_eq!(m["in_s_m"], true);

    let (_, s) = call(&app, "POST", &format!("/api/v1/sessions/{id}/undo"), None).await;
    assert_eq!(s["current"]["name"], "{P1, P2}");
    assert_eq!(s["history"].as_array().unwrap().len(), 0);
    let (st, e) = call(&app, "POST", &format!("/api/v1/sessions/{id}/undo"), None).await;
    assert_eq!(st, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(e["code"], "empty_history");
}

#[tokio::test]
async fn leaving_the_domain_is_flagged() {
    let app = app();
    let (_, s) = call(&app, "POST", "/api/v1/sessions", Some(json!({"quiver": "A2", "m": 1}))).await;
    let id = s["id"].as_u64().unwrap();
    let uri = format!("/api/v1/sessions/{id}/mutate");
    call(&app, "POST", &uri, Some(json!({"index": 1, "dir": "left"}))).await;
    // {P1, S1}: S1 is summand 1 in canonical order.
    let (st, m) = call(&app, "POST", &uri, Some(json!({"index": 1, "dir": "left"}))).await;
    assert_eq!(st, StatusCode::OK);
    assert_eq!(m["object"]["name"], "{P1, S1[1]}");
    assert_eq!(m["in_s_m"], false);
    assert_eq!(m["triangle"]["b"], "0");
    let (_, s) = call(&app, "GET", &format!("/api/v1/sessions/{id}"), None).await;
    assert_eq!(s["history"].as_array().unwrap().len(), 2);
    assert_eq!(s["endo"]["acyclic"], true);
}

#[tokio::test]
async fn predicted_moves_match_mutations() {
    let app = app();
    let (_, s) = call(&app, "POST", "/api/v1/sessions", Some(json!({"quiver": "A3:1>2<3", "m": 1, "start": "regular"}))).await;
    let id = s["id"].as_u64().unwrap();
    let moves = s["moves"].as_array().unwrap().clone();
    assert_eq!(moves.len(), 6);
    for mv in moves {
        let (_, m) = call(
            &app,
            "POST",
            &format!("/api/v1/sessions/{id}/mutate"),
            Some(json!({"index": mv["index"], "dir": mv["dir"]})),
        )
        .await;
        assert_eq!(m["object"], mv["target"]);
        call(&app, "POST", &format!("/api/v1/sessions/{id}/undo"), None).await;
    }
}

#[tokio::test]
async fn named_start_and_errors() {
    let app = app();
    let (st, s) = call(&app, "POST", "/api/v1/sessions", Some(json!({"quiver": "A2", "m": 1, "start": "S1,P2[1]"}))).await;
    assert_eq!(st, StatusCode::CREATED);
    assert_eq!(names(&s["current"]), ["S1", "P2[1]"]);

    let (st, e) = call(&app, "POST", "/api/v1/sessions", Some(json!({"quiver": "A2", "start": "Q7"}))).await;
    assert_eq!(st, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(e["code"], "invalid_object");
    let (st, e) = call(&app, "POST", "/api/v1/sessions", Some(json!({"quiver": "A2", "start": "P1"}))).await;
    assert_eq!(st, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(e["code"], "not_silting");
    let (st, e) = call(&app, "POST", "/api/v1/sessions", Some(json!({"quiver": "Z9"}))).await;
    assert_eq!(st, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(e["code"], "invalid_instance");
    let (st, e) = call(&app, "POST", "/api/v1/sessions", Some(json!({"m": 1}))).await;
    assert_eq!(st, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(e["code"], "invalid_body");

    let (st, e) = call(&app, "GET", "/api/v1/sessions/999", None).await;
    assert_eq!(st, StatusCode::NOT_FOUND);
    assert_eq!(e["code"], "unknown_session");
    let id = s["id"].as_u64().unwrap();
    let (st, e) = call(&app, "POST", &format!("/api/v1/sessions/{id}/mutate"), Some(json!({"index": 5, "dir": "left"}))).await;
    assert_eq!(st, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(e["code"], "index_out_of_range");
    let (st, _) = call(&app, "POST", &format!("/api/v1/sessions/{id}/mutate"), Some(json!({"index": 0, "dir": "up"}))).await;
    assert_eq!(st, StatusCode::UNPROCESSABLE_ENTITY);
}

#[tokio::test]
async fn instance_listing() {
    let (st, v) = call(&app(), "GET", "/api/v1/instances", None).await;
    assert_eq!(st, StatusCode::OK);
    let list = v.as_array().unwrap();
    assert!(list.iter().any(|i| i["label"].as_str().unwrap().starts_with("A2") && i["positive_roots"] == 3));
    assert!(list.iter().any(|i| i["kind"] == "E" && i["rank"] == 8 && i["positive_roots"] == 120));
}

#[test]
fn history_replays_to_current() {
    use silt_core::instance::Instance;
    use silt_core::silting::Direction;
    use std::sync::Arc;

    let inst = Arc::new(Instance::parse("A3").unwrap());
    let start = inst.regular();
    let mut s = silt_explorer::Session::new(1, inst, 2, start).unwrap();
    for (k, d) in [(2, Direction::Left), (0, Direction::Left), (1, Direction::Right), (2, Direction::Left)] {
        s.mutate(k, d).unwrap();
        assert_eq!(&s.replay().unwrap(), s.current());
    }
    s.undo().unwrap();
    assert_eq!(s.history_len(), 3);
    assert_eq!(&s.replay().unwrap(), s.current());
}
