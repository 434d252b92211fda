use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use studykin::api;
use studykin::http::{router, AppState};
use studykin::store::Store;
use studykin_core::design::{demo_quadratic, SceneFile};

fn app(dir: &tempfile::TempDir) -> Router {
    router(AppState::new(Store::open(dir.path()).unwrap()))
}

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, String) {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(match body {
            Some(v) => Body::from(v.to_string()),
            None => Body::empty(),
        })
        .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, String::from_utf8(bytes.to_vec()).unwrap())
}

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

fn demo_body() -> Value {
    serde_json::to_value(SceneFile {
        cs: demo_quadratic(),
        meta: Default::default(),
    })
    .unwrap()
}

#[tokio::test]
async fn psh_echoes_on_quadric_pose() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(&dir);
    let dq = json!({"e": [1.0, 0.0, 0.0, 0.0], "t": [0.0, 0.5, -0.25, 2.0]});
    let (status, body) = call(&app, "POST", "/psh", Some(json!({ "dq": dq }))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(parse(&body), json!({ "dq": dq }));
}

#[tokio::test]
async fn classify_degenerate_is_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(&dir);
    let a = json!({"e": [1.0, 0.0, 0.0, 0.0], "t": [0.0, 0.0, 0.0, 0.0]});
    let (status, body) = call(&app, "POST", "/classify", Some(json!({"a": a, "b": a}))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(parse(&body)["code"], "bad_input");
    assert!(parse(&body)["message"].is_string());
}

#[tokio::test]
async fn malformed_json_is_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(&dir);
    let req = Request::builder()
        .method("POST")
        .uri("/psh")
        .body(Body::from("{not json"))
        .unwrap();
    let resp = app.oneshot(req).await.unwrap();
    assert_eq!(resp.status(), StatusCode::BAD_REQUEST);
}

#[tokio::test]
async fn scene_lifecycle() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(&dir);

    let (status, body) = call(&app, "GET", "/scenes", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(parse(&body), json!([]));

    let (status, body) = call(&app, "POST", "/scenes", Some(demo_body())).await;
    assert_eq!(status, StatusCode::CREATED);
    let created = parse(&body);
    let id = created["id"].as_str().unwrap().to_string();
    assert_eq!(created["scene"], demo_body());

    let (status, body) = call(&app, "GET", &format!("/scenes/{id}"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(parse(&body), created);

    let (status, body) = call(
        &app,
        "POST",
        &format!("/scenes/{id}/evaluate"),
        Some(json!({"samples": 3})),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    let curve = parse(&body)["curve"].as_array().unwrap().clone();
    assert_eq!(curve.len(), 3);
    assert_eq!(curve[0]["height"], 0.0);
    assert_eq!(curve[2]["height"], 0.0);

    let mut edited = demo_body();
    edited["meta"] = json!({"title": "edited"});
    let (status, body) = call(&app, "PUT", &format!("/scenes/{id}"), Some(edited.clone())).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(parse(&body)["scene"], edited);

    let (status, body) = call(&app, "GET", "/scenes", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(parse(&body).as_array().unwrap().len(), 1);
}

#[tokio::test]
async fn invalid_farin_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(&dir);
    let mut body = demo_body();
    body["farin"][0] = json!(1.0);
    let (status, resp) = call(&app, "POST", "/scenes", Some(body)).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(parse(&resp)["code"], "bad_input");
    let (_, list) = call(&app, "GET", "/scenes", None).await;
    assert_eq!(parse(&list), json!([]));
}

#[tokio::test]
async fn unknown_scene_is_not_found() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(&dir);
    let missing = "00000000-0000-4000-8000-000000000000";
    for (method, uri, body) in [
        ("GET", format!("/scenes/{missing}"), None),
        ("GET", "/scenes/nonsense".to_string(), None),
        (
            "POST",
            format!("/scenes/{missing}/evaluate"),
            Some(json!({"samples": 3})),
        ),
        ("PUT", format!("/scenes/{missing}"), Some(demo_body())),
    ] {
        let (status, resp) = call(&app, method, &uri, body).await;
        assert_eq!(status, StatusCode::NOT_FOUND, "{method} {uri}");
        assert_eq!(parse(&resp)["code"], "not_found");
    }
}

#[tokio::test]
async fn optimize_persists_only_on_request() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(&dir);
    let (_, body) = call(&app, "POST", "/scenes", Some(demo_body())).await;
    let id = parse(&body)["id"].as_str().unwrap().to_string();

    let (_, before) = call(&app, "POST", &format!("/scenes/{id}/excursion"), None).await;
    let before = parse(&before)["excursion"].as_f64().unwrap();

    let req = json!({"mask": {"heights": [1]}, "grid": 65});
    let (status, out) = call(
        &app,
        "POST",
        &format!("/scenes/{id}/optimize"),
        Some(req.clone()),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    let out = parse(&out);
    assert!(out["after"].as_f64().unwrap() < out["before"].as_f64().unwrap());
    let trace = out["trace"].as_array().unwrap();
    assert!(trace.windows(2).all(|w| w[1].as_f64() <= w[0].as_f64()));

    let (_, unchanged) = call(&app, "POST", &format!("/scenes/{id}/excursion"), None).await;
    assert_eq!(parse(&unchanged)["excursion"].as_f64().unwrap(), before);

    let mut persist = req;
    persist["persist"] = json!(true);
    let (status, _) = call(
        &app,
        "POST",
        &format!("/scenes/{id}/optimize"),
        Some(persist),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    let (_, after) = call(&app, "POST", &format!("/scenes/{id}/excursion"), None).await;
    assert!(parse(&after)["excursion"].as_f64().unwrap() < before);
}

#[tokio::test]
async fn members_are_deterministic_and_match_library() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(&dir);
    let req =
        json!({"pole": {"e": [1.0, 0.0, 0.0, 0.0], "t": [1.0, 0.0, 0.0, 0.0]}, "n": 4, "seed": 9});
    let (s1, b1) = call(&app, "POST", "/complex/members", Some(req.clone())).await;
    let (s2, b2) = call(&app, "POST", "/complex/members", Some(req.clone())).await;
    assert_eq!((s1, s2), (StatusCode::OK, StatusCode::OK));
    assert_eq!(b1, b2);
    let direct = api::complex_members_op(&serde_json::from_value(req).unwrap()).unwrap();
    assert_eq!(b1, api::to_json(&direct));
}

#[tokio::test]
async fn index_serves_html() {
    let dir = tempfile::tempdir().unwrap();
    let app = app(&dir);
    let (status, body) = call(&app, "GET", "/", None).await;
    assert_eq!(status, StatusCode::OK);
    assert!(body.contains("<html>"));
}
