//! Marker-based crowd engine.
//!
//! Walkable ground is sampled into static markers. Each step every active
//! agent captures the markers closer to it than to any other agent (within
//! the perception radius) and moves toward a weighted mean of the captured
//! offsets, biased toward its current route waypoint.

mod assign;
mod config;
mod markers;
mod motion;
mod sim;
mod spawn;
mod steer;

pub use assign::{assign_markers, TIE_TOLERANCE};
pub use config::SimulationConfig;
pub use markers::{jitter_layout, scatter_markers, MarkerField};
pub use motion::{compute_motion, MotionTerms};
pub use sim::{
    run_simulation, run_simulation_with_limits, AgentStep, AgentTrack, Simulation,
    SimulationResult, StepReport,
};
pub use spawn::{sample_spawn_points, spawn_agents, SpawnPoint};
pub use steer::{Steering, BODY_RADIUS};

use crate::geometry::Vec2;
use crate::pathfind::PathError;
use crate::scene::ValidationReport;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

const MARKER_STREAM: u64 = 1;
const SPAWN_STREAM: u64 = 2;

/// Independent deterministic generator per purpose, all derived from one seed.
pub(crate) fn rng_stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgentState {
    /// Dense id; also the agent's index in the simulation.
    pub id: u32,
    pub spawner_id: String,
    pub goal_id: String,
    pub goal_center: Vec2,
    pub position: Vec2,
    /// Simplified route; the last entry is the goal center.
    pub waypoints: Vec<Vec2>,
    pub waypoint_index: usize,
    /// Unit vector toward the current waypoint, or zero.
    pub goal_direction: Vec2,
    pub arrived: bool,
    pub spawn_step: u32,
    pub arrived_step: Option<u32>,
}

#[derive(Debug, Error)]
pub enum SimError {
    #[error("scene is not runnable: {} error(s)", .0.errors().count())]
    InvalidScene(ValidationReport),
    #[error("invalid simulation config: {0:?}")]
    InvalidConfig(Vec<&'static str>),
    #[error("spawner {0} has no goal")]
    MissingGoal(String),
    #[error("UnreachableGoalError: spawner {spawner_id}: {reason}")]
    UnreachableGoal {
        spawner_id: String,
        reason: PathError,
    },
    #[error("SpawnError: spawner {spawner_id}: {reason}")]
    Spawn { spawner_id: String, reason: String },
}
