use super::{Service, ServiceError, ServiceSubmit, StoreError, DEFAULT_LEASE_S, DEFAULT_WORKERS};
use crate::scene::{PresetKind, SceneLimits};
use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde_json::{json, Value};
use std::future::Future;
use std::io::Write;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::thread;
use std::time::Duration;

const IDLE_POLL: Duration = Duration::from_millis(100);

#[derive(Debug, Clone)]
pub struct ServeOptions {
    pub addr: SocketAddr,
    pub data_dir: PathBuf,
    pub workers: usize,
    pub lease_s: u64,
    pub limits: SceneLimits,
}

impl Default for ServeOptions {
    fn default() -> Self {
        Self {
            addr: SocketAddr::from(([127, 0, 0, 1], 8080)),
            data_dir: PathBuf::from("data"),
            workers: DEFAULT_WORKERS,
            lease_s: DEFAULT_LEASE_S,
            limits: SceneLimits::default(),
        }
    }
}

fn error_body(status: StatusCode, kind: &str, message: String) -> Response {
    (status, Json(json!({ "error": kind, "message": message }))).into_response()
}

fn store_failure(e: StoreError) -> Response {
    tracing::error!("{e}");
    error_body(
        StatusCode::INTERNAL_SERVER_ERROR,
        "StoreError",
        e.to_string(),
    )
}

fn service_failure(e: ServiceError) -> Response {
    match e {
        ServiceError::NotFound(_) => error_body(StatusCode::NOT_FOUND, "NotFound", e.to_string()),
        ServiceError::NotReady(_) => error_body(StatusCode::CONFLICT, "NotReady", e.to_string()),
        // A failed job's result is permanently unavailable; the stored error
        // is the answer.
        ServiceError::Failed(msg) => error_body(StatusCode::CONFLICT, "Failed", msg),
        ServiceError::Store(e) => store_failure(e),
    }
}

async fn blocking<T: Send + 'static>(f: impl FnOnce() -> T + Send + 'static) -> T {
    tokio::task::spawn_blocking(f)
        .await
        .expect("blocking task panicked")
}

async fn submit(State(svc): State<Arc<Service>>, body: Bytes) -> Response {
    let parsed: Result<Value, _> = serde_json::from_slice(&body);
    let (scene_doc, config) = match parsed {
        Ok(Value::Object(mut map)) => {
            let scene = match map.remove("scene") {
                Some(Value::String(s)) => s,
                Some(v) => v.to_string(),
                None => String::new(),
            };
            (scene, map.remove("config").filter(|v| !v.is_null()))
        }
        _ => (String::from_utf8_lossy(&body).into_owned(), None),
    };
    match blocking(move || svc.submit(&scene_doc, config)).await {
        Ok(job_id) => (StatusCode::ACCEPTED, Json(json!({ "job_id": job_id }))).into_response(),
        Err(ServiceSubmit::Rejected(e)) => {
            (StatusCode::UNPROCESSABLE_ENTITY, Json(e)).into_response()
        }
        Err(ServiceSubmit::Store(e)) => store_failure(e),
    }
}

async fn job(State(svc): State<Arc<Service>>, Path(id): Path<String>) -> Response {
    match blocking(move || svc.get_job(&id)).await {
        Ok(view) => Json(view).into_response(),
        Err(e) => service_failure(e),
    }
}

async fn result(State(svc): State<Arc<Service>>, Path(id): Path<String>) -> Response {
    match blocking(move || svc.get_result(&id)).await {
        Ok(bytes) => ([(header::CONTENT_TYPE, "application/json")], bytes).into_response(),
        Err(e) => service_failure(e),
    }
}

async fn presets() -> Json<Value> {
    let kinds: Vec<Value> = PresetKind::ALL
        .iter()
        .map(|k| {
            json!({
                "kind": k,
                "footprint": k.footprint(),
                "walls": k.walls(),
            })
        })
        .collect();
    Json(Value::Array(kinds))
}

pub fn router(service: Arc<Service>) -> Router {
    Router::new()
        .route("/api/simulations", post(submit))
        .route("/api/jobs/{id}", get(job))
        .route("/api/jobs/{id}/result", get(result))
        .route("/api/presets", get(presets))
        .route("/healthz", get(|| async { "ok" }))
        .with_state(service)
}

fn spawn_workers(
    svc: &Arc<Service>,
    n: usize,
    stop: &Arc<AtomicBool>,
) -> Vec<thread::JoinHandle<()>> {
    (0..n)
        .map(|i| {
            let svc = Arc::clone(svc);
            let stop = Arc::clone(stop);
            let name = format!("{}-worker-{i}", std::process::id());
            thread::spawn(move || {
                while !stop.load(Ordering::Relaxed) {
                    match svc.execute_next(&name) {
                        Ok(Some(_)) => {}
                        Ok(None) => thread::sleep(IDLE_POLL),
                        Err(e) => {
                            tracing::error!(worker = %name, "{e}");
                            thread::sleep(IDLE_POLL);
                        }
                    }
                }
            })
        })
        .collect()
}

/// Binds, prints `listening on <addr>` to stdout, runs workers and the API
/// until `shutdown` resolves.
pub async fn serve(
    opts: ServeOptions,
    shutdown: impl Future<Output = ()> + Send + 'static,
) -> std::io::Result<()> {
    let svc =
        Service::open(&opts.data_dir, opts.limits, opts.lease_s).map_err(std::io::Error::other)?;
    let svc = Arc::new(svc);
    let listener = tokio::net::TcpListener::bind(opts.addr).await?;
    let addr = listener.local_addr()?;
    {
        let mut out = std::io::stdout().lock();
        writeln!(out, "listening on {addr}")?;
        out.flush()?;
    }
    tracing::info!(%addr, data_dir = %opts.data_dir.display(), workers = opts.workers, "service started");
    let stop = Arc::new(AtomicBool::new(false));
    let workers = spawn_workers(&svc, opts.workers, &stop);
    let served = axum::serve(listener, router(svc))
        .with_graceful_shutdown(shutdown)
        .await;
    stop.store(true, Ordering::Relaxed);
    for w in workers {
        let _ = w.join();
    }
    served
}

/// Blocking entry point: own runtime, stops on Ctrl-C.
pub fn run_server(opts: ServeOptions) -> std::io::Result<()> {
    let rt = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()?;
    rt.block_on(serve(opts, async {
        let _ = tokio::signal::ctrl_c().await;
    }))
}
