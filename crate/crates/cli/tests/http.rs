use axum::body::{to_bytes, Body};
use axum::http::{Request, StatusCode};
use clusterforge_cli::serve::router;
use serde_json::{json, Value};
use tower::ServiceExt;

async fn call(method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder().method(method).uri(uri).header("content-type", "application/json");
    let req = req.body(body.map_or_else(Body::empty, |b| Body::from(b.to_string()))).unwrap();
    let resp = router().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = to_bytes(resp.into_body(), usize::MAX).await.unwrap();
    (status, serde_json::from_slice(&bytes).unwrap_or(Value::Null))
}

#[tokio::test]
async fn health() {
    assert_eq!(call("GET", "/api/health", None).await, (StatusCode::OK, json!({ "status": "ok" })));
}

#[tokio::test]
async fn quiver_mutate() {
    let (s, v) =
        call("POST", "/api/quiver/mutate", Some(json!({ "b_matrix": [[0, -1, 0], [1, 0, -1], [0, 1, 0]], "k": 2 })))
            .await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["b_matrix"], json!([["0", "1", "-1"], ["-1", "0", "1"], ["1", "-1", "0"]]));
    let (s, v) =
        call("POST", "/api/quiver/mutate", Some(json!({ "b_matrix": [["0", "2"], ["-2", "0"]], "k": "1" }))).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(v["b_matrix"], json!([["0", "-2"], ["2", "0"]]));
    let (s, v) = call("POST", "/api/quiver/mutate", Some(json!({ "b_matrix": [[0, 1], [1, 0]], "k": 1 }))).await;
    assert_eq!(s, StatusCode::UNPROCESSABLE_ENTITY);
    assert!(v["error"].is_string());
    let (s, _) = call("POST", "/api/quiver/mutate", Some(json!({ "b_matrix": [[0, 1], [-1, 0]], "k": 3 }))).await;
    assert_eq!(s, StatusCode::UNPROCESSABLE_ENTITY);
}

#[tokio::test]
async fn cluster_step() {
    // arrow 1 -> 2
    let b = json!([[0, -1], [1, 0]]);
    let (s, v) = call("POST", "/api/cluster/step", Some(json!({ "b_matrix": b, "history": [], "k": 1 }))).await;
    assert_eq!(s, StatusCode::OK);
    let g = &v["g_matrix"];
    assert_eq!((g[0][0].clone(), g[1][0].clone()), (json!("-1"), json!("0")));
    assert_eq!(v["history"], json!([1]));
    let (_, back) = call("POST", "/api/cluster/step", Some(json!({ "b_matrix": b, "history": [1], "k": 1 }))).await;
    assert_eq!(back["g_matrix"], json!([["1", "0"], ["0", "1"]]));
    assert_eq!(back["b_matrix"], json!([["0", "-1"], ["1", "0"]]));
    assert_eq!(back["variables"].as_array().unwrap().len(), 2);
}

#[tokio::test]
async fn classify_and_contains() {
    let (_, v) =
        call("POST", "/api/classify", Some(json!({ "b_matrix": [[0, 3, 0], [-3, 0, 1], [0, -1, 0]], "budget": 1000 })))
            .await;
    assert_eq!(v["verdict"], "InfiniteMut");
    let (_, v) = call("POST", "/api/classify", Some(json!({ "b_matrix": [[0, -1, 0], [1, 0, -1], [0, 1, 0]] }))).await;
    assert_eq!(v["verdict"], "Dynkin(A3)");
    let (_, v) = call(
        "POST",
        "/api/gfan/contains",
        Some(json!({ "b_matrix": [[0, -1], [1, 0]], "v": ["-1", "1/2"], "depth": 10 })),
    )
    .await;
    assert_eq!(v["verdict"], "InCone");
    assert!(v["history"].is_array());
    let (_, v) =
        call("POST", "/api/gfan/contains", Some(json!({ "b_matrix": [[0, -2], [2, 0]], "v": [1, -1], "depth": 30 })))
            .await;
    assert_eq!(v["verdict"], "NotFoundWithin");
}

#[tokio::test]
async fn responses_are_stateless() {
    let body = json!({ "b_matrix": [[0, -1, 0], [1, 0, -1], [0, 1, 0]], "history": [2, 1], "k": 3 });
    let a = call("POST", "/api/cluster/step", Some(body.clone())).await;
    let b = call("POST", "/api/cluster/step", Some(body)).await;
    assert_eq!(a, b);
}
