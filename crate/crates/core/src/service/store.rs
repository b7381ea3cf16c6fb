//! File-per-job store.
//!
//! Layout under the data directory:
//!
//! ```text
//! jobs/<id>.json      job document
//! results/<id>.json   result bundle (done jobs only)
//! claim.lock          advisory lock serializing claims and completions
//! ```
//!
//! Every file is written to a temporary name and renamed into place, so a
//! reader sees either the old or the new document.

use super::job::{is_job_id, new_job_id, Job, JobState, Lease};
use std::fs::{self, File, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("store io error at {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("corrupt job document {path}: {message}")]
    Corrupt { path: PathBuf, message: String },
    #[error("job {0} already exists")]
    Exists(String),
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> StoreError + '_ {
    move |source| StoreError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// How a claimed job ended.
#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    /// Serialized result bundle.
    Done {
        bundle: String,
        wall_clock_s: f64,
    },
    Failed {
        error: String,
        wall_clock_s: f64,
    },
}

#[derive(Debug, Clone)]
pub struct JobStore {
    root: PathBuf,
}

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), StoreError> {
    let dir = path.parent().expect("store paths have a parent");
    let tmp = dir.join(format!(
        ".{}.{}.{}.tmp",
        path.file_name().and_then(|n| n.to_str()).unwrap_or("doc"),
        std::process::id(),
        TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
    ));
    let mut f = File::create(&tmp).map_err(io_err(&tmp))?;
    f.write_all(bytes).map_err(io_err(&tmp))?;
    f.sync_all().map_err(io_err(&tmp))?;
    drop(f);
    fs::rename(&tmp, path).map_err(io_err(path))?;
    // Persist the rename itself.
    if let Ok(d) = File::open(dir) {
        let _ = d.sync_all();
    }
    Ok(())
}

impl JobStore {
    pub fn open(root: impl Into<PathBuf>) -> Result<Self, StoreError> {
        let root = root.into();
        for sub in ["jobs", "results"] {
            let p = root.join(sub);
            fs::create_dir_all(&p).map_err(io_err(&p))?;
        }
        Ok(Self { root })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn job_path(&self, id: &str) -> PathBuf {
        self.root.join("jobs").join(format!("{id}.json"))
    }

    fn result_path(&self, id: &str) -> PathBuf {
        self.root.join("results").join(format!("{id}.json"))
    }

    fn lock(&self) -> Result<File, StoreError> {
        let path = self.root.join("claim.lock");
        let f = OpenOptions::new()
            .create(true)
            .truncate(false)
            .write(true)
            .open(&path)
            .map_err(io_err(&path))?;
        f.lock().map_err(io_err(&path))?;
        Ok(f)
    }

    fn write_job(&self, job: &Job) -> Result<(), StoreError> {
        let bytes = serde_json::to_vec_pretty(job).expect("job serialization is infallible");
        write_atomic(&self.job_path(&job.job_id), &bytes)
    }

    fn read_job(path: &Path) -> Result<Job, StoreError> {
        let bytes = fs::read(path).map_err(io_err(path))?;
        serde_json::from_slice(&bytes).map_err(|e| StoreError::Corrupt {
            path: path.to_path_buf(),
            message: e.to_string(),
        })
    }

    /// Stores a new job with a fresh id, durably, and returns the id.
    pub fn insert_new(&self, mut job: Job) -> Result<String, StoreError> {
        let _guard = self.lock()?;
        loop {
            if !self.job_path(&job.job_id).exists() && is_job_id(&job.job_id) {
                break;
            }
            job.job_id = new_job_id();
        }
        self.write_job(&job)?;
        Ok(job.job_id)
    }

    pub fn load(&self, id: &str) -> Result<Option<Job>, StoreError> {
        if !is_job_id(id) {
            return Ok(None);
        }
        let path = self.job_path(id);
        match fs::metadata(&path) {
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(io_err(&path)(e)),
            Ok(_) => Self::read_job(&path).map(Some),
        }
    }

    pub fn read_result(&self, id: &str) -> Result<Option<Vec<u8>>, StoreError> {
        if !is_job_id(id) {
            return Ok(None);
        }
        let path = self.result_path(id);
        match fs::read(&path) {
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(io_err(&path)(e)),
            Ok(b) => Ok(Some(b)),
        }
    }

    /// All stored jobs, in no particular order.
    pub fn list(&self) -> Result<Vec<Job>, StoreError> {
        let dir = self.root.join("jobs");
        let mut jobs = Vec::new();
        for entry in fs::read_dir(&dir).map_err(io_err(&dir))? {
            let entry = entry.map_err(io_err(&dir))?;
            let name = entry.file_name();
            let Some(name) = name.to_str() else { continue };
            let Some(id) = name.strip_suffix(".json") else {
                continue;
            };
            if is_job_id(id) {
                jobs.push(Self::read_job(&entry.path())?);
            }
        }
        Ok(jobs)
    }

    /// Atomically claims the oldest claimable job (by submission time, then
    /// id) and marks it running under a new lease.
    pub fn claim(&self, worker: &str, now: u64, lease_ms: u64) -> Result<Option<Job>, StoreError> {
        let _guard = self.lock()?;
        let mut jobs: Vec<Job> = self
            .list()?
            .into_iter()
            .filter(|j| j.is_claimable(now))
            .collect();
        jobs.sort_by(|a, b| (a.submitted_at, &a.job_id).cmp(&(b.submitted_at, &b.job_id)));
        let Some(mut job) = jobs.into_iter().next() else {
            return Ok(None);
        };
        job.state = JobState::Running;
        job.started_at = Some(now);
        job.attempts += 1;
        job.lease = Some(Lease {
            token: new_job_id(),
            worker: worker.to_string(),
            expires_at: now.saturating_add(lease_ms),
        });
        self.write_job(&job)?;
        Ok(Some(job))
    }

    /// Records the terminal state of a claimed job. Returns false (and writes
    /// nothing) unless the job is still running under `token`.
    pub fn finish(
        &self,
        id: &str,
        token: &str,
        outcome: Outcome,
        now: u64,
    ) -> Result<bool, StoreError> {
        let _guard = self.lock()?;
        let Some(mut job) = self.load(id)? else {
            return Ok(false);
        };
        let holds =
            job.state == JobState::Running && job.lease.as_ref().is_some_and(|l| l.token == token);
        if !holds {
            return Ok(false);
        }
        match outcome {
            Outcome::Done {
                bundle,
                wall_clock_s,
            } => {
                write_atomic(&self.result_path(id), bundle.as_bytes())?;
                job.state = JobState::Done;
                job.wall_clock_s = Some(wall_clock_s);
            }
            Outcome::Failed {
                error,
                wall_clock_s,
            } => {
                job.state = JobState::Failed;
                job.error = Some(error);
                job.wall_clock_s = Some(wall_clock_s);
            }
        }
        job.finished_at = Some(now);
        job.lease = None;
        self.write_job(&job)?;
        Ok(true)
    }
}
