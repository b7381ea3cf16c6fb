use super::Raster;
use crate::engine::SimulationResult;
use crate::geometry::Vec2;
use serde::{Deserialize, Serialize};

/// Same resolution as the nav grid.
pub const DENSITY_CELL_SIZE: f64 = 0.5;

/// Zero-count color.
const DEEP_BLUE: [u8; 3] = [0, 0, 139];
/// Maximum-count color.
const YELLOW: [u8; 3] = [255, 255, 0];

/// Visit counts per cell. `counts[row][col]`, row 0 at the bottom (y = 0).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityGrid {
    pub origin: Vec2,
    pub cell_size: f64,
    pub cols: usize,
    pub rows: usize,
    pub counts: Vec<Vec<u64>>,
}

impl DensityGrid {
    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn max(&self) -> u64 {
        self.counts.iter().flatten().copied().max().unwrap_or(0)
    }

    pub fn cell_bounds(&self, col: usize, row: usize) -> (Vec2, Vec2) {
        let lo = self.origin + Vec2::new(col as f64 * self.cell_size, row as f64 * self.cell_size);
        (lo, lo + Vec2::new(self.cell_size, self.cell_size))
    }
}

/// Cell index along one axis; a coordinate on a cell boundary belongs to
/// the lower-index cell.
fn axis_index(v: f64, cell: f64, n: usize) -> usize {
    let i = (v / cell).ceil() - 1.0;
    if i <= 0.0 {
        0
    } else {
        (i as usize).min(n - 1)
    }
}

/// Counts every recorded position of every agent into the containing cell.
pub fn accumulate_density(result: &SimulationResult, cell_size: f64) -> DensityGrid {
    assert!(cell_size > 0.0, "cell_size must be positive");
    let cols = ((result.world.width / cell_size).ceil() as usize).max(1);
    let rows = ((result.world.height / cell_size).ceil() as usize).max(1);
    let mut counts = vec![vec![0u64; cols]; rows];
    for p in result.agents.iter().flat_map(|a| &a.trajectory) {
        let c = axis_index(p.x, cell_size, cols);
        let r = axis_index(p.y, cell_size, rows);
        counts[r][c] += 1;
    }
    DensityGrid {
        origin: Vec2::ZERO,
        cell_size,
        cols,
        rows,
        counts,
    }
}

/// Linear RGB ramp from deep blue at 0 to yellow at `max`, rounding half up.
pub fn density_color(count: u64, max: u64) -> [u8; 3] {
    if max == 0 {
        return DEEP_BLUE;
    }
    let t = count.min(max) as f64 / max as f64;
    std::array::from_fn(|ch| {
        let a = f64::from(DEEP_BLUE[ch]);
        let b = f64::from(YELLOW[ch]);
        (a + (b - a) * t + 0.5).floor() as u8
    })
}

/// One pixel per cell, top image row = highest y.
pub fn colorize_density(grid: &DensityGrid) -> Raster {
    let max = grid.max();
    let mut raster = Raster::new(grid.cols, grid.rows, DEEP_BLUE);
    for (r, row) in grid.counts.iter().enumerate() {
        for (c, &count) in row.iter().enumerate() {
            raster.set(c, grid.rows - 1 - r, density_color(count, max));
        }
    }
    raster
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::AgentTrack;
    use crate::scene::WorldExtents;

    fn result(tracks: Vec<Vec<Vec2>>) -> SimulationResult {
        SimulationResult {
            world: WorldExtents::default(),
            dt: 0.1,
            agents: tracks
                .into_iter()
                .enumerate()
                .map(|(i, trajectory)| AgentTrack {
                    agent_id: i as u32,
                    spawner_id: "s".into(),
                    goal_id: "g".into(),
                    goal: Vec2::ZERO,
                    arrived_step: None,
                    trajectory,
                })
                .collect(),
            simulation_time_s: 0.0,
            steps_executed: 0,
            all_arrived: true,
        }
    }

    #[test]
    fn empty_result_all_zero() {
        let g = accumulate_density(&result(vec![]), 0.5);
        assert_eq!((g.cols, g.rows), (60, 60));
        assert_eq!(g.total(), 0);
    }

    #[test]
    fn fixed_point_accumulates_in_one_cell() {
        let g = accumulate_density(&result(vec![vec![Vec2::new(3.3, 7.1); 50]]), 0.5);
        assert_eq!(g.counts[14][6], 50);
        assert_eq!(g.total(), 50);
        assert_eq!(g.max(), 50);
    }

    #[test]
    fn boundary_goes_to_lower_cell() {
        let g = accumulate_density(
            &result(vec![vec![Vec2::new(1.0, 0.5), Vec2::new(0.0, 30.0)]]),
            0.5,
        );
        assert_eq!(g.counts[0][1], 1);
        assert_eq!(g.counts[59][0], 1);
    }

    #[test]
    fn ramp_endpoints_and_midpoint() {
        assert_eq!(density_color(0, 10), [0, 0, 139]);
        assert_eq!(density_color(10, 10), [255, 255, 0]);
        assert_eq!(density_color(5, 10), [128, 128, 70]);
        assert_eq!(density_color(0, 0), [0, 0, 139]);
    }

    #[test]
    fn ramp_is_monotone() {
        let max = 97;
        let colors: Vec<[u8; 3]> = (0..=max).map(|c| density_color(c, max)).collect();
        for w in colors.windows(2) {
            assert!(w[1][0] >= w[0][0] && w[1][1] >= w[0][1] && w[1][2] <= w[0][2]);
        }
    }

    #[test]
    fn all_zero_grid_is_uniform_blue() {
        let g = accumulate_density(&result(vec![]), 1.0);
        let r = colorize_density(&g);
        assert!(r.pixels().iter().all(|p| *p == [0, 0, 139]));
    }
}
