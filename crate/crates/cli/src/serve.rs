//! Stateless JSON API. Integers in responses are decimal strings; requests
//! accept either strings or JSON numbers. Vertex indices are 1-based.

use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use clusterforge::cluster::{Seed, TropicalSeed};
use clusterforge::gfan::{contains_point, Membership};
use clusterforge::quiver::classify;
use clusterforge::{Quiver, Rational, Scalar};
use serde::Deserialize;
use serde_json::{json, Value};

pub fn router() -> Router {
    Router::new()
        .route("/api/health", get(health))
        .route("/api/quiver/mutate", post(quiver_mutate))
        .route("/api/cluster/step", post(cluster_step))
        .route("/api/classify", post(classify_quiver))
        .route("/api/gfan/contains", post(gfan_contains))
}

pub async fn serve(addr: &str) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router()).await
}

pub struct ApiError(StatusCode, String);

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(json!({ "error": self.1 }))).into_response()
    }
}

fn bad(e: impl ToString) -> ApiError {
    ApiError(StatusCode::UNPROCESSABLE_ENTITY, e.to_string())
}

#[derive(Deserialize, Clone)]
#[serde(untagged)]
enum Num {
    Int(i64),
    Text(String),
}

impl Num {
    fn int(&self) -> Result<i64, ApiError> {
        match self {
            Num::Int(v) => Ok(*v),
            Num::Text(s) => s.trim().parse().map_err(|_| bad(format!("not an integer: {s:?}"))),
        }
    }

    fn rational(&self) -> Result<Rational, ApiError> {
        match self {
            Num::Int(v) => Ok(Rational::from_i64(*v)),
            Num::Text(s) => Rational::parse(s).ok_or_else(|| bad(format!("not a rational: {s:?}"))),
        }
    }
}

fn quiver(b: &[Vec<Num>]) -> Result<Quiver, ApiError> {
    let m: Vec<Vec<i64>> = b.iter().map(|r| r.iter().map(Num::int).collect()).collect::<Result<_, _>>()?;
    Quiver::from_b_matrix(&m).map_err(bad)
}

fn vertex(k: &Num, n: usize) -> Result<usize, ApiError> {
    let k = k.int()?;
    if k >= 1 && k as usize <= n {
        Ok(k as usize - 1)
    } else {
        Err(bad(format!("vertex {k} is not in 1..={n}")))
    }
}

fn strings(m: &[Vec<i64>]) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(i64::to_string).collect()).collect()
}

async fn health() -> Json<Value> {
    Json(json!({ "status": "ok" }))
}

#[derive(Deserialize)]
struct MutateRequest {
    b_matrix: Vec<Vec<Num>>,
    k: Num,
}

async fn quiver_mutate(Json(r): Json<MutateRequest>) -> Result<Json<Value>, ApiError> {
    let q = quiver(&r.b_matrix)?;
    let k = vertex(&r.k, q.n())?;
    let m = q.mutate(k).map_err(bad)?;
    Ok(Json(json!({ "b_matrix": strings(&m.b_matrix()) })))
}

#[derive(Deserialize)]
struct StepRequest {
    b_matrix: Vec<Vec<Num>>,
    #[serde(default)]
    history: Vec<Num>,
    k: Num,
}

/// Columns of `g_matrix` are the g-vectors of the cluster variables.
async fn cluster_step(Json(r): Json<StepRequest>) -> Result<Json<Value>, ApiError> {
    let q = quiver(&r.b_matrix)?;
    let mut path: Vec<usize> = r.history.iter().map(|k| vertex(k, q.n())).collect::<Result<_, _>>()?;
    path.push(vertex(&r.k, q.n())?);
    let seed = Seed::<Rational>::initial(&q).mutate_path(&path).map_err(bad)?;
    let mut t = TropicalSeed::initial(&q);
    for &k in &path {
        t = t.checked_mutate(k).ok_or_else(|| bad("g-vector entries left the range of i64"))?;
    }
    let n = q.n();
    let g: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| t.gvectors()[j][i]).collect()).collect();
    Ok(Json(json!({
        "history": path.iter().map(|k| k + 1).collect::<Vec<_>>(),
        "b_matrix": strings(&seed.quiver().b_matrix()),
        "g_matrix": strings(&g),
        "variables": seed.cluster().iter().map(|p| p.to_json_value()).collect::<Vec<_>>(),
    })))
}

#[derive(Deserialize)]
struct ClassifyRequest {
    b_matrix: Vec<Vec<Num>>,
    #[serde(default = "default_budget")]
    budget: usize,
}

fn default_budget() -> usize {
    100_000
}

async fn classify_quiver(Json(r): Json<ClassifyRequest>) -> Result<Json<Value>, ApiError> {
    let q = quiver(&r.b_matrix)?;
    let c = tokio::task::spawn_blocking(move || classify(&q, r.budget)).await.map_err(bad)?.map_err(bad)?;
    Ok(Json(json!({ "verdict": c.to_string() })))
}

#[derive(Deserialize)]
struct ContainsRequest {
    b_matrix: Vec<Vec<Num>>,
    v: Vec<Num>,
    #[serde(default = "default_depth")]
    depth: usize,
}

fn default_depth() -> usize {
    50
}

async fn gfan_contains(Json(r): Json<ContainsRequest>) -> Result<Json<Value>, ApiError> {
    let q = quiver(&r.b_matrix)?;
    let v: Vec<Rational> = r.v.iter().map(Num::rational).collect::<Result<_, _>>()?;
    Ok(Json(match contains_point(&q, &v, r.depth).map_err(bad)? {
        Membership::InCone { history, coordinates } => json!({
            "verdict": "InCone",
            "history": history.iter().map(|k| k + 1).collect::<Vec<_>>(),
            "coordinates": coordinates.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        }),
        Membership::NotFoundWithin(d) => json!({ "verdict": "NotFoundWithin", "depth": d, "history": Value::Null }),
    }))
}
