use crate::engine::SimulationConfig;
use crate::scene::Scene;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JobState {
    Queued,
    Running,
    Done,
    Failed,
}

impl JobState {
    pub fn is_terminal(self) -> bool {
        matches!(self, JobState::Done | JobState::Failed)
    }
}

/// Claim held by the worker executing a job. Another worker may take the
/// job over once `expires_at` has passed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lease {
    pub token: String,
    pub worker: String,
    pub expires_at: u64,
}

/// Stored job document. Timestamps are milliseconds since the Unix epoch.
/// The result bundle lives in its own file and exists iff the job is done.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Job {
    pub job_id: String,
    pub state: JobState,
    pub submitted_at: u64,
    pub started_at: Option<u64>,
    pub finished_at: Option<u64>,
    pub scene: Scene,
    pub config: SimulationConfig,
    pub error: Option<String>,
    pub wall_clock_s: Option<f64>,
    pub lease: Option<Lease>,
    pub attempts: u32,
}

impl Job {
    pub fn new(job_id: String, scene: Scene, config: SimulationConfig, submitted_at: u64) -> Self {
        Self {
            job_id,
            state: JobState::Queued,
            submitted_at,
            started_at: None,
            finished_at: None,
            scene,
            config,
            error: None,
            wall_clock_s: None,
            lease: None,
            attempts: 0,
        }
    }

    /// Queued, or running under a lease that has run out.
    pub fn is_claimable(&self, now: u64) -> bool {
        match self.state {
            JobState::Queued => true,
            JobState::Running => self.lease.as_ref().is_none_or(|l| l.expires_at <= now),
            _ => false,
        }
    }

    pub fn view(&self) -> JobView {
        JobView {
            job_id: self.job_id.clone(),
            state: self.state,
            submitted_at: self.submitted_at,
            started_at: self.started_at,
            finished_at: self.finished_at,
            error: self.error.clone(),
            wall_clock_s: self.wall_clock_s,
        }
    }
}

/// Job metadata as returned to clients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JobView {
    pub job_id: String,
    pub state: JobState,
    pub submitted_at: u64,
    pub started_at: Option<u64>,
    pub finished_at: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub wall_clock_s: Option<f64>,
}

/// 128 random bits, lowercase hex.
pub fn new_job_id() -> String {
    format!("{:032x}", rand::random::<u128>())
}

pub fn is_job_id(s: &str) -> bool {
    s.len() == 32 && s.bytes().all(|b| matches!(b, b'0'..=b'9' | b'a'..=b'f'))
}
