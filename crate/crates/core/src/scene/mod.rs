//! The authored world: spawner areas, goals, obstacles and preset instances.

mod json;
mod obj;
mod preset;
mod validate;

pub use json::{parse_scene, parse_scene_with_warnings, serialize_scene, SCENE_FORMAT_VERSION};
pub use obj::{obj_to_obstacles, ObjError};
pub use preset::{instantiate_preset, PlacementError, PresetKind, PresetWall};
pub use validate::{validate_scene, Issue, SceneLimits, Severity, ValidationReport};

use crate::geometry::{OrientedRect, Vec2};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Side length of a newly created spawner area.
pub const DEFAULT_SPAWNER_SIDE: f64 = 2.0;
/// Goals are not editable; every goal has this radius.
pub const GOAL_RADIUS: f64 = 0.5;
/// Default world is a 30 m square.
pub const DEFAULT_WORLD_SIDE: f64 = 30.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WorldExtents {
    pub width: f64,
    pub height: f64,
}

impl Default for WorldExtents {
    fn default() -> Self {
        Self {
            width: DEFAULT_WORLD_SIDE,
            height: DEFAULT_WORLD_SIDE,
        }
    }
}

impl WorldExtents {
    /// Closed containment with a small tolerance for values produced by
    /// rotation arithmetic.
    pub fn contains(&self, p: Vec2) -> bool {
        const EPS: f64 = 1e-9;
        p.x >= -EPS && p.y >= -EPS && p.x <= self.width + EPS && p.y <= self.height + EPS
    }

    pub fn area(&self) -> f64 {
        self.width * self.height
    }
}

/// An "Agents" object: a rectangle emitting `agent_count` agents that share a goal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpawnerArea {
    pub id: String,
    /// Lower-left corner.
    pub origin: Vec2,
    pub width: f64,
    pub height: f64,
    pub agent_count: u32,
    #[serde(default)]
    pub goal_id: Option<String>,
}

impl SpawnerArea {
    /// A default-size spawner whose lower-left corner is `origin`.
    pub fn new(id: impl Into<String>, origin: Vec2, agent_count: u32) -> Self {
        Self {
            id: id.into(),
            origin,
            width: DEFAULT_SPAWNER_SIDE,
            height: DEFAULT_SPAWNER_SIDE,
            agent_count,
            goal_id: None,
        }
    }

    pub fn with_goal(mut self, goal_id: impl Into<String>) -> Self {
        self.goal_id = Some(goal_id.into());
        self
    }

    pub fn center(&self) -> Vec2 {
        self.origin + Vec2::new(self.width / 2.0, self.height / 2.0)
    }

    pub fn rect(&self) -> OrientedRect {
        OrientedRect::new(self.center(), self.width, self.height, 0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Goal {
    pub id: String,
    pub center: Vec2,
    pub radius: f64,
}

impl Goal {
    pub fn new(id: impl Into<String>, center: Vec2) -> Self {
        Self {
            id: id.into(),
            center,
            radius: GOAL_RADIUS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObstacleRect {
    pub id: String,
    pub center: Vec2,
    pub width: f64,
    pub height: f64,
    /// Degrees counterclockwise, normalized to [0, 360).
    pub rotation: f64,
    /// Preset-owned obstacles are locked and cannot be edited, moved or removed.
    #[serde(default)]
    pub locked: bool,
}

impl ObstacleRect {
    pub fn new(id: impl Into<String>, center: Vec2, width: f64, height: f64) -> Self {
        Self {
            id: id.into(),
            center,
            width,
            height,
            rotation: 0.0,
            locked: false,
        }
    }

    pub fn with_rotation(mut self, degrees: f64) -> Self {
        self.rotation = normalize_rotation(degrees);
        self
    }

    pub fn rect(&self) -> OrientedRect {
        OrientedRect::new(self.center, self.width, self.height, self.rotation)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PresetInstance {
    pub id: String,
    pub preset_kind: PresetKind,
    pub anchor: Vec2,
    pub obstacle_ids: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scene {
    pub version: String,
    pub world: WorldExtents,
    #[serde(default)]
    pub spawners: Vec<SpawnerArea>,
    #[serde(default)]
    pub goals: Vec<Goal>,
    #[serde(default)]
    pub obstacles: Vec<ObstacleRect>,
    #[serde(default)]
    pub presets: Vec<PresetInstance>,
}

impl Default for Scene {
    fn default() -> Self {
        Self::new(WorldExtents::default())
    }
}

impl Scene {
    pub fn new(world: WorldExtents) -> Self {
        Self {
            version: SCENE_FORMAT_VERSION.to_string(),
            world,
            spawners: Vec::new(),
            goals: Vec::new(),
            obstacles: Vec::new(),
            presets: Vec::new(),
        }
    }

    pub fn goal(&self, id: &str) -> Option<&Goal> {
        self.goals.iter().find(|g| g.id == id)
    }

    pub fn obstacle(&self, id: &str) -> Option<&ObstacleRect> {
        self.obstacles.iter().find(|o| o.id == id)
    }

    pub fn total_agents(&self) -> u64 {
        self.spawners.iter().map(|s| u64::from(s.agent_count)).sum()
    }

    /// Adds a preset and its locked obstacles.
    pub fn add_preset(
        &mut self,
        id: &str,
        kind: PresetKind,
        anchor: Vec2,
    ) -> Result<(), PlacementError> {
        let (instance, walls) = instantiate_preset(id, kind, anchor, self.world)?;
        self.obstacles.extend(walls);
        self.presets.push(instance);
        Ok(())
    }

    /// Collections sorted by id; the form produced by parsing and serializing.
    pub fn canonicalized(mut self) -> Self {
        self.spawners.sort_by(|a, b| a.id.cmp(&b.id));
        self.goals.sort_by(|a, b| a.id.cmp(&b.id));
        self.obstacles.sort_by(|a, b| a.id.cmp(&b.id));
        self.presets.sort_by(|a, b| a.id.cmp(&b.id));
        for o in &mut self.obstacles {
            o.rotation = normalize_rotation(o.rotation);
        }
        self
    }
}

/// Maps any angle in degrees onto [0, 360).
pub fn normalize_rotation(degrees: f64) -> f64 {
    let r = degrees.rem_euclid(360.0);
    // rem_euclid can round up to exactly 360 for tiny negative inputs; also folds -0.0.
    if r >= 360.0 {
        0.0
    } else {
        r + 0.0
    }
}

/// Structural problems that prevent a document from becoming a [`Scene`].
#[derive(Debug, Error, PartialEq)]
pub enum SceneError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown reference: {0}")]
    Reference(String),
    #[error("duplicate id: {0}")]
    DuplicateId(String),
    #[error("unsupported scene version {found:?} (expected {expected:?})")]
    Version { found: String, expected: String },
}
