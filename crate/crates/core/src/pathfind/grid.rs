use super::ENDPOINT_SNAP_RINGS;
use crate::geometry::{OrientedRect, Vec2};
use crate::scene::Scene;

pub const DEFAULT_CELL_SIZE: f64 = 0.5;
/// Agent body radius (0.2 m) plus a 0.1 m margin.
pub const DEFAULT_CLEARANCE: f64 = 0.3;

/// Row-major occupancy grid anchored at the world origin.
#[derive(Debug, Clone, PartialEq)]
pub struct NavGrid {
    pub origin: Vec2,
    pub cell_size: f64,
    pub cols: usize,
    pub rows: usize,
    blocked: Vec<bool>,
}

/// Marks a cell blocked iff its center lies in an obstacle grown by `clearance`.
pub fn build_nav_grid(scene: &Scene, cell_size: f64, clearance: f64) -> NavGrid {
    assert!(cell_size > 0.0, "cell_size must be positive");
    let cols = (scene.world.width / cell_size).ceil().max(1.0) as usize;
    let rows = (scene.world.height / cell_size).ceil().max(1.0) as usize;
    let inflated: Vec<OrientedRect> = scene
        .obstacles
        .iter()
        .map(|o| o.rect().inflated(clearance))
        .collect();
    let mut grid = NavGrid {
        origin: Vec2::ZERO,
        cell_size,
        cols,
        rows,
        blocked: vec![false; cols * rows],
    };
    for row in 0..rows {
        for col in 0..cols {
            let c = grid.cell_center(col, row);
            grid.blocked[row * cols + col] = inflated.iter().any(|r| r.contains(c));
        }
    }
    grid
}

impl NavGrid {
    /// An all-free grid, mostly for tests.
    pub fn empty(cols: usize, rows: usize, cell_size: f64) -> Self {
        Self {
            origin: Vec2::ZERO,
            cell_size,
            cols,
            rows,
            blocked: vec![false; cols * rows],
        }
    }

    pub fn from_blocked(cols: usize, rows: usize, cell_size: f64, blocked: Vec<bool>) -> Self {
        assert_eq!(blocked.len(), cols * rows);
        Self {
            origin: Vec2::ZERO,
            cell_size,
            cols,
            rows,
            blocked,
        }
    }

    pub fn len(&self) -> usize {
        self.blocked.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocked.is_empty()
    }

    pub fn index(&self, col: usize, row: usize) -> usize {
        row * self.cols + col
    }

    pub fn coords(&self, index: usize) -> (usize, usize) {
        (index % self.cols, index / self.cols)
    }

    pub fn is_blocked(&self, col: usize, row: usize) -> bool {
        self.blocked[self.index(col, row)]
    }

    pub fn is_blocked_index(&self, index: usize) -> bool {
        self.blocked[index]
    }

    pub fn set_blocked(&mut self, col: usize, row: usize, blocked: bool) {
        let i = self.index(col, row);
        self.blocked[i] = blocked;
    }

    pub fn blocked_count(&self) -> usize {
        self.blocked.iter().filter(|&&b| b).count()
    }

    pub fn cell_center(&self, col: usize, row: usize) -> Vec2 {
        self.origin
            + Vec2::new(
                (col as f64 + 0.5) * self.cell_size,
                (row as f64 + 0.5) * self.cell_size,
            )
    }

    /// The cell containing `p`; points on the far grid edge map to the last cell.
    pub fn cell_of(&self, p: Vec2) -> Option<(usize, usize)> {
        let u = (p.x - self.origin.x) / self.cell_size;
        let v = (p.y - self.origin.y) / self.cell_size;
        if !(u >= 0.0 && v >= 0.0 && u <= self.cols as f64 && v <= self.rows as f64) {
            return None;
        }
        let col = (u.floor() as usize).min(self.cols - 1);
        let row = (v.floor() as usize).min(self.rows - 1);
        Some((col, row))
    }

    /// Nearest free cell to `target` within the snap rings around `(col,row)`.
    ///
    /// Distance is measured from cell centers to `target`; ties go to the
    /// lower cell index.
    pub fn nearest_free(&self, col: usize, row: usize, target: Vec2) -> Option<(usize, usize)> {
        if !self.is_blocked(col, row) {
            return Some((col, row));
        }
        let r = ENDPOINT_SNAP_RINGS;
        let mut best: Option<(f64, usize)> = None;
        for rr in row.saturating_sub(r)..=(row + r).min(self.rows - 1) {
            for cc in col.saturating_sub(r)..=(col + r).min(self.cols - 1) {
                if self.is_blocked(cc, rr) {
                    continue;
                }
                let d = self.cell_center(cc, rr).distance(target);
                let idx = self.index(cc, rr);
                if best.is_none_or(|(bd, bi)| d < bd || (d == bd && idx < bi)) {
                    best = Some((d, idx));
                }
            }
        }
        best.map(|(_, i)| self.coords(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scene::ObstacleRect;

    /// Brute-force occupancy: every cell center against every inflated obstacle.
    fn oracle_blocked(scene: &Scene, cell: f64, clearance: f64) -> Vec<(usize, usize)> {
        let cols = (scene.world.width / cell).ceil() as usize;
        let rows = (scene.world.height / cell).ceil() as usize;
        let mut out = Vec::new();
        for row in 0..rows {
            for col in 0..cols {
                let p = Vec2::new((col as f64 + 0.5) * cell, (row as f64 + 0.5) * cell);
                let hit = scene.obstacles.iter().any(|o| {
                    let (s, c) = (-o.rotation).to_radians().sin_cos();
                    let d = p - o.center;
                    let lx = d.x * c - d.y * s;
                    let ly = d.x * s + d.y * c;
                    lx.abs() <= o.width / 2.0 + clearance && ly.abs() <= o.height / 2.0 + clearance
                });
                if hit {
                    out.push((col, row));
                }
            }
        }
        out
    }

    fn grid_blocked(g: &NavGrid) -> Vec<(usize, usize)> {
        (0..g.len())
            .filter(|&i| g.is_blocked_index(i))
            .map(|i| g.coords(i))
            .collect()
    }

    #[test]
    fn empty_world() {
        let g = build_nav_grid(&Scene::default(), 0.5, 0.3);
        assert_eq!((g.cols, g.rows), (60, 60));
        assert_eq!(g.blocked_count(), 0);
    }

    #[test]
    fn centered_square_blocks_sixteen_cells() {
        let mut s = Scene::default();
        s.obstacles
            .push(ObstacleRect::new("o", Vec2::new(15.0, 15.0), 2.0, 2.0));
        let g = build_nav_grid(&s, 0.5, 0.0);
        assert_eq!(g.blocked_count(), 16);
        assert_eq!(grid_blocked(&g), oracle_blocked(&s, 0.5, 0.0));
    }

    #[test]
    fn rotated_square_matches_brute_force() {
        let mut s = Scene::default();
        s.obstacles
            .push(ObstacleRect::new("o", Vec2::new(15.0, 15.0), 2.0, 2.0).with_rotation(45.0));
        s.obstacles
            .push(ObstacleRect::new("p", Vec2::new(7.3, 21.1), 6.0, 2.0).with_rotation(30.0));
        for clearance in [0.0, 0.3] {
            let g = build_nav_grid(&s, 0.5, clearance);
            assert_eq!(grid_blocked(&g), oracle_blocked(&s, 0.5, clearance));
        }
    }

    #[test]
    fn non_multiple_extents_round_up() {
        let s = Scene::new(crate::scene::WorldExtents {
            width: 10.2,
            height: 3.0,
        });
        let g = build_nav_grid(&s, 0.5, 0.3);
        assert_eq!((g.cols, g.rows), (21, 6));
    }

    #[test]
    fn snap_to_nearest_free() {
        let mut g = NavGrid::empty(5, 5, 1.0);
        g.set_blocked(2, 2, true);
        g.set_blocked(2, 3, true);
        let snapped = g.nearest_free(2, 2, Vec2::new(2.5, 2.9)).unwrap();
        assert!(!g.is_blocked(snapped.0, snapped.1));
        assert_eq!(snapped, (1, 2));
        assert_eq!(g.cell_of(Vec2::new(5.0, 5.0)), Some((4, 4)));
        assert_eq!(g.cell_of(Vec2::new(-0.1, 1.0)), None);
    }
}
