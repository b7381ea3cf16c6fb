//! Route following: picks the waypoint an agent heads for each step.

use super::AgentState;
use crate::geometry::{OrientedRect, Vec2};
use crate::pathfind::{plan_path, simplify_path, NavGrid};

/// Agent body radius used for line-of-sight checks when skipping waypoints.
pub const BODY_RADIUS: f64 = 0.2;

/// How far inside an obstacle's boundary a move is cut off.
const WALL_SKIN: f64 = 1e-6;

/// An agent is stalled when it moved less than `STALL_DISTANCE` over the
/// last `STALL_STEPS` steps (jammed), or less than `LOOP_DISTANCE` over the
/// last `LOOP_STEPS` (circling in a livelock).
const STALL_STEPS: usize = 20;
const STALL_DISTANCE: f64 = 0.05;
const LOOP_STEPS: usize = 100;
const LOOP_DISTANCE: f64 = 0.5;
/// Stalled agents sidestep, switching sides every `YIELD_PHASE` steps.
const YIELD_PHASE: u32 = 10;

pub fn is_stalled(trajectory: &[Vec2]) -> bool {
    let Some(&now) = trajectory.last() else {
        return false;
    };
    let moved_since = |steps: usize| {
        trajectory
            .len()
            .checked_sub(steps + 1)
            .map(|i| now.distance(trajectory[i]))
    };
    moved_since(STALL_STEPS).is_some_and(|d| d < STALL_DISTANCE)
        || moved_since(LOOP_STEPS).is_some_and(|d| d < LOOP_DISTANCE)
}

/// Goal direction for an agent stalled for `stalled_steps` consecutive
/// steps: rotated 90° clockwise, then counterclockwise, alternating.
pub fn yield_direction(goal_direction: Vec2, stalled_steps: u32) -> Vec2 {
    let phase = stalled_steps.saturating_sub(1) / YIELD_PHASE;
    let angle = if phase.is_multiple_of(2) { -90.0 } else { 90.0 };
    goal_direction.rotated(angle)
}

/// Static obstacle geometry plus the nav grid, shared by all agents.
#[derive(Debug, Clone)]
pub struct Steering {
    grid: NavGrid,
    obstacles: Vec<OrientedRect>,
    padded: Vec<OrientedRect>,
    cores: Vec<OrientedRect>,
}

fn clear(rects: &[OrientedRect], a: Vec2, b: Vec2) -> bool {
    rects.iter().all(|r| r.segment_entry(a, b).is_none())
}

impl Steering {
    pub fn new(grid: NavGrid, obstacles: Vec<OrientedRect>) -> Self {
        let padded = obstacles.iter().map(|o| o.inflated(BODY_RADIUS)).collect();
        let cores = obstacles.iter().map(|o| o.inflated(-WALL_SKIN)).collect();
        Self {
            grid,
            obstacles,
            padded,
            cores,
        }
    }

    /// Shortens a displacement so the agent stops where it would enter an
    /// obstacle. The result is `step` scaled by a factor in [0, 1].
    pub fn limit_move(&self, from: Vec2, step: Vec2) -> Vec2 {
        let to = from + step;
        let mut t = 1.0f64;
        for core in &self.cores {
            if core.contains(from) {
                // Already inside (rounding at the skin): never go deeper.
                if core.penetration_depth(to) > core.penetration_depth(from) {
                    t = 0.0;
                }
            } else if let Some(entry) = core.segment_entry(from, to) {
                t = t.min(entry);
            }
        }
        if t < 1.0 {
            step * t
        } else {
            step
        }
    }

    pub fn grid(&self) -> &NavGrid {
        &self.grid
    }

    /// Updates the waypoint index and goal direction of one agent.
    ///
    /// A waypoint is passed once the agent is within `waypoint_radius` of it
    /// and the next one is in body-width line of sight. If obstacles hide
    /// the current waypoint (the crowd pushed the agent off its route), a
    /// detour is planned from the agent's position and spliced in front of it.
    pub fn steer(&self, agent: &mut AgentState, waypoint_radius: f64) {
        let last = agent.waypoints.len().saturating_sub(1);
        while agent.waypoint_index < last {
            let i = agent.waypoint_index;
            let near = agent.position.distance(agent.waypoints[i]) <= waypoint_radius;
            if near && clear(&self.padded, agent.position, agent.waypoints[i + 1]) {
                agent.waypoint_index += 1;
            } else {
                break;
            }
        }

        if let Some(&target) = agent.waypoints.get(agent.waypoint_index) {
            if !clear(&self.obstacles, agent.position, target) {
                self.splice_detour(agent, target);
            }
        }

        let target = agent
            .waypoints
            .get(agent.waypoint_index)
            .copied()
            .unwrap_or(agent.goal_center);
        agent.goal_direction = (target - agent.position).normalized_or_zero();
    }

    fn splice_detour(&self, agent: &mut AgentState, target: Vec2) {
        let Ok(raw) = plan_path(&self.grid, agent.position, target) else {
            return;
        };
        let detour = simplify_path(&self.grid, &raw).waypoints;
        if detour.len() < 3 {
            return;
        }
        let mut rest = agent.waypoints.split_off(agent.waypoint_index);
        rest.splice(0..0, detour[1..detour.len() - 1].iter().copied());
        rest.dedup();
        agent.waypoints.extend(rest);
    }
}
