//! Occupancy grid and A* routing.
//!
//! Costs are tracked exactly as `straight + diagonal·√2` step counts, so two
//! optimal routes always agree on cost to the last bit.

mod astar;
mod grid;
mod simplify;

pub use astar::{plan_path, GridCost};
pub use grid::{build_nav_grid, NavGrid, DEFAULT_CELL_SIZE, DEFAULT_CLEARANCE};
pub use simplify::{segment_visible, simplify_path, supercover_cells};

use crate::geometry::Vec2;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Cells a blocked endpoint may be moved to search for free space.
pub const ENDPOINT_SNAP_RINGS: usize = 2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Path {
    pub waypoints: Vec<Vec2>,
    /// Length in meters.
    pub cost: f64,
}

impl Path {
    /// Euclidean length of the polyline through the waypoints.
    pub fn polyline_length(waypoints: &[Vec2]) -> f64 {
        waypoints.windows(2).map(|w| w[0].distance(w[1])).sum()
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum PathError {
    #[error("{which} point ({x}, {y}) lies in blocked space")]
    BlockedEndpoint { which: &'static str, x: f64, y: f64 },
    #[error("no route between ({from_x}, {from_y}) and ({to_x}, {to_y})")]
    NoPath {
        from_x: f64,
        from_y: f64,
        to_x: f64,
        to_y: f64,
    },
}
