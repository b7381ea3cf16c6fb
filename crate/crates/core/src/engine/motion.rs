use super::SimulationConfig;
use crate::geometry::Vec2;
use serde::Serialize;

/// Offsets shorter than this are treated as the agent standing on the
/// marker: no direction, so cosθ is taken as 0.
const MIN_OFFSET: f64 = 1e-9;
const MIN_MOVEMENT: f64 = 1e-12;

/// Per-agent quantities of one motion evaluation.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct MotionTerms {
    /// Marker minus agent position, for each captured marker.
    pub offsets: Vec<Vec2>,
    /// Normalized weights, same order as `offsets`; sum to 1 when non-empty.
    pub weights: Vec<f64>,
    /// Weighted mean offset.
    pub movement: Vec2,
}

/// Movement toward captured space.
///
/// Each marker is weighted by `(1 + cosθ) / (1 + |v|)` where θ is the angle
/// between its offset `v` and the goal direction; a zero goal direction uses
/// `1 / (1 + |v|)`. The displacement follows the weighted mean offset, capped
/// at `max_speed·dt`.
pub fn compute_motion(
    position: Vec2,
    goal_direction: Vec2,
    captured: &[Vec2],
    config: &SimulationConfig,
) -> (MotionTerms, Vec2) {
    let offsets: Vec<Vec2> = captured.iter().map(|&m| m - position).collect();
    if offsets.is_empty() {
        return (MotionTerms::default(), Vec2::ZERO);
    }

    let has_direction = goal_direction.length_squared() > 0.0;
    let angular = |v: Vec2| {
        let len = v.length();
        let cos = if len < MIN_OFFSET {
            0.0
        } else {
            goal_direction.dot(v) / len
        };
        (1.0 + cos) / (1.0 + len)
    };
    let distance_only = |v: Vec2| 1.0 / (1.0 + v.length());

    let mut raw: Vec<f64> = if has_direction {
        offsets.iter().map(|&v| angular(v).max(0.0)).collect()
    } else {
        offsets.iter().map(|&v| distance_only(v)).collect()
    };
    let mut total: f64 = raw.iter().sum();
    if total <= 0.0 {
        // Every marker sits exactly behind the agent.
        raw = offsets.iter().map(|&v| distance_only(v)).collect();
        total = raw.iter().sum();
    }
    let weights: Vec<f64> = raw.iter().map(|f| f / total).collect();
    let movement = offsets
        .iter()
        .zip(&weights)
        .fold(Vec2::ZERO, |acc, (&v, &w)| acc + v * w);

    let len = movement.length();
    let displacement = if len < MIN_MOVEMENT {
        Vec2::ZERO
    } else {
        movement * (len.min(config.step_length()) / len)
    };
    (
        MotionTerms {
            offsets,
            weights,
            movement,
        },
        displacement,
    )
}
