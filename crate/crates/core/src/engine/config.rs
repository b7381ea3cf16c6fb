use crate::pathfind::{DEFAULT_CELL_SIZE, DEFAULT_CLEARANCE};
use serde::{Deserialize, Serialize};

/// Engine parameters. Every field has a default, so partial JSON overrides
/// deserialize cleanly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimulationConfig {
    /// Seconds per step.
    pub dt: f64,
    /// Maximum walking speed, m/s.
    pub max_speed: f64,
    /// Radius within which an agent may capture markers, m.
    pub perception_radius: f64,
    /// Markers per square meter of walkable ground.
    pub marker_density: f64,
    pub arrival_radius: f64,
    pub waypoint_radius: f64,
    pub min_spawn_separation: f64,
    pub max_steps: u32,
    pub seed: u64,
    pub nav_cell_size: f64,
    pub nav_clearance: f64,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        Self {
            dt: 0.1,
            max_speed: 1.3,
            perception_radius: 1.0,
            marker_density: 8.0,
            arrival_radius: 0.5,
            waypoint_radius: 0.8,
            min_spawn_separation: 0.4,
            max_steps: 5000,
            seed: 0,
            nav_cell_size: DEFAULT_CELL_SIZE,
            nav_clearance: DEFAULT_CLEARANCE,
        }
    }
}

impl SimulationConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Names of parameters that are not strictly positive and finite.
    pub fn invalid_fields(&self) -> Vec<&'static str> {
        let positive = [
            ("dt", self.dt),
            ("max_speed", self.max_speed),
            ("perception_radius", self.perception_radius),
            ("marker_density", self.marker_density),
            ("arrival_radius", self.arrival_radius),
            ("waypoint_radius", self.waypoint_radius),
            ("min_spawn_separation", self.min_spawn_separation),
            ("nav_cell_size", self.nav_cell_size),
        ];
        let mut bad: Vec<&'static str> = positive
            .iter()
            .filter(|(_, v)| !(v.is_finite() && *v > 0.0))
            .map(|(n, _)| *n)
            .collect();
        if !(self.nav_clearance.is_finite() && self.nav_clearance >= 0.0) {
            bad.push("nav_clearance");
        }
        if self.max_steps == 0 {
            bad.push("max_steps");
        }
        bad
    }

    /// Largest distance an agent may cover in one step.
    pub fn step_length(&self) -> f64 {
        self.max_speed * self.dt
    }
}
