//! Job queue around the engine: submissions are validated and stored,
//! workers claim and execute them, results are served from the store.
//!
//! All coordination between workers (threads or processes sharing a data
//! directory) goes through [`JobStore::claim`] and [`JobStore::finish`].

mod http;
mod job;
mod store;

pub use http::{router, run_server, serve, ServeOptions};
pub use job::{is_job_id, new_job_id, Job, JobState, JobView, Lease};
pub use store::{JobStore, Outcome, StoreError};

use crate::analytics::ResultBundle;
use crate::engine::{run_simulation_with_limits, SimulationConfig};
use crate::scene::{parse_scene, validate_scene, Issue, SceneLimits, Severity, ValidationReport};
use serde::Serialize;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Instant, SystemTime, UNIX_EPOCH};
use thiserror::Error;

pub const DEFAULT_WORKERS: usize = 2;
pub const DEFAULT_LEASE_S: u64 = 300;

pub fn now_ms() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0)
}

/// Why a submission was refused. Every variant carries a report so clients
/// can render one format.
#[derive(Debug, Clone, Error, Serialize)]
#[serde(tag = "error")]
pub enum SubmitError {
    #[error("ParseError: {message}")]
    ParseError {
        message: String,
        report: ValidationReport,
    },
    #[error("ValidationError: scene has {} error(s)", report.errors().count())]
    ValidationError { report: ValidationReport },
    #[error("ConfigError: invalid fields {fields:?}")]
    ConfigError {
        fields: Vec<String>,
        report: ValidationReport,
    },
}

impl SubmitError {
    pub fn report(&self) -> &ValidationReport {
        match self {
            SubmitError::ParseError { report, .. }
            | SubmitError::ValidationError { report }
            | SubmitError::ConfigError { report, .. } => report,
        }
    }

    fn single(object_id: &str, message: String) -> ValidationReport {
        ValidationReport {
            ok: false,
            issues: vec![Issue {
                severity: Severity::Error,
                object_id: object_id.into(),
                message,
            }],
        }
    }
}

#[derive(Debug, Error)]
pub enum ServiceError {
    #[error("job {0} not found")]
    NotFound(String),
    #[error("job {0} is not finished")]
    NotReady(String),
    #[error("{0}")]
    Failed(String),
    #[error(transparent)]
    Store(#[from] StoreError),
}

#[derive(Debug, Clone)]
pub struct Service {
    store: JobStore,
    limits: SceneLimits,
    lease_ms: u64,
}

impl Service {
    pub fn open(
        data_dir: impl Into<PathBuf>,
        limits: SceneLimits,
        lease_s: u64,
    ) -> Result<Self, StoreError> {
        Ok(Self {
            store: JobStore::open(data_dir)?,
            limits,
            lease_ms: lease_s.saturating_mul(1000),
        })
    }

    pub fn store(&self) -> &JobStore {
        &self.store
    }

    pub fn limits(&self) -> &SceneLimits {
        &self.limits
    }

    /// Parses and validates a scene document; on success the job is stored
    /// as queued before its id is returned.
    pub fn submit(
        &self,
        scene_doc: &str,
        config: Option<serde_json::Value>,
    ) -> Result<String, ServiceSubmit> {
        let scene = parse_scene(scene_doc).map_err(|e| {
            ServiceSubmit::Rejected(SubmitError::ParseError {
                message: e.to_string(),
                report: SubmitError::single("document", e.to_string()),
            })
        })?;
        let config = match config {
            None => SimulationConfig::default(),
            Some(v) => serde_json::from_value::<SimulationConfig>(v).map_err(|e| {
                ServiceSubmit::Rejected(SubmitError::ConfigError {
                    fields: vec![],
                    report: SubmitError::single("config", e.to_string()),
                })
            })?,
        };
        let bad = config.invalid_fields();
        if !bad.is_empty() {
            return Err(ServiceSubmit::Rejected(SubmitError::ConfigError {
                fields: bad.iter().map(|s| s.to_string()).collect(),
                report: SubmitError::single(
                    "config",
                    format!("invalid values for {}", bad.join(", ")),
                ),
            }));
        }
        let report = validate_scene(&scene, &self.limits);
        if !report.is_runnable() {
            return Err(ServiceSubmit::Rejected(SubmitError::ValidationError {
                report,
            }));
        }
        let job = Job::new(new_job_id(), scene, config, now_ms());
        Ok(self.store.insert_new(job)?)
    }

    pub fn get_job(&self, id: &str) -> Result<JobView, ServiceError> {
        self.store
            .load(id)?
            .map(|j| j.view())
            .ok_or_else(|| ServiceError::NotFound(id.into()))
    }

    /// Stored bundle bytes of a done job.
    pub fn get_result(&self, id: &str) -> Result<Vec<u8>, ServiceError> {
        let job = self
            .store
            .load(id)?
            .ok_or_else(|| ServiceError::NotFound(id.into()))?;
        match job.state {
            JobState::Queued | JobState::Running => Err(ServiceError::NotReady(id.into())),
            JobState::Failed => Err(ServiceError::Failed(job.error.unwrap_or_default())),
            JobState::Done => self
                .store
                .read_result(id)?
                .ok_or_else(|| ServiceError::NotFound(id.into())),
        }
    }

    pub fn execute_next(&self, worker: &str) -> Result<Option<String>, StoreError> {
        self.execute_next_at(worker, now_ms())
    }

    /// Claims the oldest claimable job as of `now` (ms) and runs it. Returns
    /// the job id, or `None` when the queue is idle.
    pub fn execute_next_at(&self, worker: &str, now: u64) -> Result<Option<String>, StoreError> {
        let Some(job) = self.store.claim(worker, now, self.lease_ms)? else {
            return Ok(None);
        };
        let token = job
            .lease
            .as_ref()
            .expect("claimed job has a lease")
            .token
            .clone();
        tracing::info!(job = %job.job_id, worker, "running job");
        let started = Instant::now();
        let run = catch_unwind(AssertUnwindSafe(|| {
            run_simulation_with_limits(&job.scene, &job.config, &self.limits)
                .map(|r| ResultBundle::from_result(r).to_json())
                .map_err(|e| e.to_string())
        }))
        .unwrap_or_else(|_| Err("InternalError: simulation panicked".into()));
        let wall_clock_s = started.elapsed().as_secs_f64();
        let outcome = match run {
            Ok(bundle) => Outcome::Done {
                bundle,
                wall_clock_s,
            },
            Err(error) => Outcome::Failed {
                error,
                wall_clock_s,
            },
        };
        let recorded = self
            .store
            .finish(&job.job_id, &token, outcome, now_ms().max(now))?;
        if !recorded {
            tracing::warn!(job = %job.job_id, worker, "lease lost; outcome discarded");
        }
        Ok(Some(job.job_id))
    }
}

/// Outcome of [`Service::submit`] other than success.
#[derive(Debug, Error)]
pub enum ServiceSubmit {
    #[error(transparent)]
    Rejected(SubmitError),
    #[error(transparent)]
    Store(#[from] StoreError),
}
