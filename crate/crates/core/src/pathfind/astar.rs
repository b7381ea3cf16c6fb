use super::{NavGrid, Path, PathError};
use crate::geometry::Vec2;
use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;
use std::f64::consts::SQRT_2;
use std::ops::Add;

/// Cost of an 8-connected grid route: `straight + diagonal·√2` cell steps.
///
/// Ordering is exact. Because √2 is irrational, two costs compare equal
/// only when both counts match.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct GridCost {
    pub straight: u32,
    pub diagonal: u32,
}

impl GridCost {
    pub const ZERO: GridCost = GridCost {
        straight: 0,
        diagonal: 0,
    };
    const STRAIGHT: GridCost = GridCost {
        straight: 1,
        diagonal: 0,
    };
    const DIAGONAL: GridCost = GridCost {
        straight: 0,
        diagonal: 1,
    };

    /// Octile distance between two cells.
    pub fn octile(dx: usize, dy: usize) -> GridCost {
        let (lo, hi) = if dx < dy { (dx, dy) } else { (dy, dx) };
        GridCost {
            straight: (hi - lo) as u32,
            diagonal: lo as u32,
        }
    }

    pub fn meters(self, cell_size: f64) -> f64 {
        cell_size * (f64::from(self.straight) + f64::from(self.diagonal) * SQRT_2)
    }
}

impl Add for GridCost {
    type Output = GridCost;
    fn add(self, rhs: GridCost) -> GridCost {
        GridCost {
            straight: self.straight + rhs.straight,
            diagonal: self.diagonal + rhs.diagonal,
        }
    }
}

impl Ord for GridCost {
    fn cmp(&self, other: &Self) -> Ordering {
        // Compare a = Δstraight against b·√2 with b = -Δdiagonal.
        let a = i64::from(self.straight) - i64::from(other.straight);
        let b = i64::from(other.diagonal) - i64::from(self.diagonal);
        match (a.signum(), b.signum()) {
            (0, 0) => Ordering::Equal,
            (sa, sb) if sa >= 0 && sb <= 0 => Ordering::Greater,
            (sa, sb) if sa <= 0 && sb >= 0 => Ordering::Less,
            (1, 1) => (a * a).cmp(&(2 * b * b)),
            _ => (2 * b * b).cmp(&(a * a)),
        }
    }
}

impl PartialOrd for GridCost {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

const NEIGHBORS: [(isize, isize); 8] = [
    (1, 0),
    (-1, 0),
    (0, 1),
    (0, -1),
    (1, 1),
    (1, -1),
    (-1, 1),
    (-1, -1),
];

fn endpoint_cell(
    grid: &NavGrid,
    p: Vec2,
    which: &'static str,
) -> Result<(usize, usize), PathError> {
    let blocked = || PathError::BlockedEndpoint {
        which,
        x: p.x,
        y: p.y,
    };
    let (col, row) = grid.cell_of(p).ok_or_else(blocked)?;
    grid.nearest_free(col, row, p).ok_or_else(blocked)
}

/// Shortest 8-connected route between the cells containing `start` and `goal`.
///
/// Diagonal steps require both adjacent orthogonal cells to be free. Blocked
/// endpoints snap to the nearest free cell within two rings. Among equal
/// f-scores the lower cell index is expanded first. Waypoints are cell centers.
pub fn plan_path(grid: &NavGrid, start: Vec2, goal: Vec2) -> Result<Path, PathError> {
    let (sc, sr) = endpoint_cell(grid, start, "start")?;
    let (gc, gr) = endpoint_cell(grid, goal, "goal")?;
    let start_idx = grid.index(sc, sr);
    let goal_idx = grid.index(gc, gr);

    let heuristic = |idx: usize| {
        let (c, r) = grid.coords(idx);
        GridCost::octile(c.abs_diff(gc), r.abs_diff(gr))
    };

    let n = grid.len();
    let mut g_score: Vec<Option<GridCost>> = vec![None; n];
    let mut parent: Vec<usize> = vec![usize::MAX; n];
    let mut closed = vec![false; n];
    let mut open = BinaryHeap::new();

    g_score[start_idx] = Some(GridCost::ZERO);
    open.push(Reverse((heuristic(start_idx), start_idx)));

    while let Some(Reverse((_, idx))) = open.pop() {
        if closed[idx] {
            continue;
        }
        closed[idx] = true;
        if idx == goal_idx {
            break;
        }
        let g = g_score[idx].expect("open nodes have a score");
        let (c, r) = grid.coords(idx);
        for (dc, dr) in NEIGHBORS {
            let (Some(nc), Some(nr)) = (c.checked_add_signed(dc), r.checked_add_signed(dr)) else {
                continue;
            };
            if nc >= grid.cols || nr >= grid.rows || grid.is_blocked(nc, nr) {
                continue;
            }
            let diagonal = dc != 0 && dr != 0;
            if diagonal && (grid.is_blocked(nc, r) || grid.is_blocked(c, nr)) {
                continue;
            }
            let nidx = grid.index(nc, nr);
            if closed[nidx] {
                continue;
            }
            let step = if diagonal {
                GridCost::DIAGONAL
            } else {
                GridCost::STRAIGHT
            };
            let tentative = g + step;
            if g_score[nidx].is_none_or(|old| tentative < old) {
                g_score[nidx] = Some(tentative);
                parent[nidx] = idx;
                open.push(Reverse((tentative + heuristic(nidx), nidx)));
            }
        }
    }

    let Some(total) = g_score[goal_idx].filter(|_| closed[goal_idx]) else {
        return Err(PathError::NoPath {
            from_x: start.x,
            from_y: start.y,
            to_x: goal.x,
            to_y: goal.y,
        });
    };

    let mut cells = vec![goal_idx];
    let mut cur = goal_idx;
    while cur != start_idx {
        cur = parent[cur];
        cells.push(cur);
    }
    cells.reverse();
    let waypoints = cells
        .into_iter()
        .map(|i| {
            let (c, r) = grid.coords(i);
            grid.cell_center(c, r)
        })
        .collect();
    Ok(Path {
        waypoints,
        cost: total.meters(grid.cell_size),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gc(straight: u32, diagonal: u32) -> GridCost {
        GridCost { straight, diagonal }
    }

    #[test]
    fn exact_ordering() {
        // 3 vs 2·√2 ≈ 2.83
        assert!(gc(3, 0) > gc(0, 2));
        // 1 + √2 ≈ 2.41 vs 2.5? not representable; compare 5 vs 3·√2 ≈ 4.24
        assert!(gc(5, 0) > gc(0, 3));
        assert!(gc(4, 0) < gc(0, 3));
        assert_eq!(gc(2, 3).cmp(&gc(2, 3)), Ordering::Equal);
        assert!(gc(1, 1) < gc(0, 2));
        assert!(gc(7, 0) < gc(0, 5));
    }

    #[test]
    fn straight_vertical_path() {
        let grid = NavGrid::empty(10, 10, 1.0);
        let p = plan_path(&grid, Vec2::new(1.5, 1.5), Vec2::new(1.5, 9.5)).unwrap();
        assert_eq!(p.cost, 8.0);
        assert_eq!(p.waypoints.len(), 9);
        assert!(p.waypoints.iter().all(|w| w.x == 1.5));
    }

    #[test]
    fn walled_in_goal_has_no_path() {
        let mut grid = NavGrid::empty(10, 10, 1.0);
        for c in 3..=7 {
            grid.set_blocked(c, 3, true);
            grid.set_blocked(c, 7, true);
        }
        for r in 3..=7 {
            grid.set_blocked(3, r, true);
            grid.set_blocked(7, r, true);
        }
        let err = plan_path(&grid, Vec2::new(0.5, 0.5), Vec2::new(5.5, 5.5)).unwrap_err();
        assert!(matches!(err, PathError::NoPath { .. }));
    }

    #[test]
    fn no_corner_cutting() {
        // Two blocked cells touching diagonally: the route may not squeeze between them.
        let mut grid = NavGrid::empty(3, 3, 1.0);
        grid.set_blocked(1, 0, true);
        grid.set_blocked(0, 1, true);
        let err = plan_path(&grid, Vec2::new(0.5, 0.5), Vec2::new(2.5, 2.5));
        assert!(matches!(err, Err(PathError::NoPath { .. })));
    }

    #[test]
    fn blocked_start_outside_snap_rings() {
        let mut grid = NavGrid::empty(9, 9, 1.0);
        for r in 0..9 {
            for c in 0..9 {
                grid.set_blocked(c, r, (2..=6).contains(&c) && (2..=6).contains(&r));
            }
        }
        let err = plan_path(&grid, Vec2::new(4.5, 4.5), Vec2::new(0.5, 0.5)).unwrap_err();
        assert!(matches!(
            err,
            PathError::BlockedEndpoint { which: "start", .. }
        ));
    }

    #[test]
    fn same_cell() {
        let grid = NavGrid::empty(4, 4, 0.5);
        let p = plan_path(&grid, Vec2::new(0.1, 0.1), Vec2::new(0.4, 0.4)).unwrap();
        assert_eq!(p.waypoints, vec![Vec2::new(0.25, 0.25)]);
        assert_eq!(p.cost, 0.0);
    }

    #[test]
    fn deterministic() {
        let mut grid = NavGrid::empty(20, 20, 0.5);
        for r in 2..18 {
            grid.set_blocked(10, r, true);
        }
        let a = plan_path(&grid, Vec2::new(1.0, 5.0), Vec2::new(9.0, 5.0)).unwrap();
        let b = plan_path(&grid, Vec2::new(1.0, 5.0), Vec2::new(9.0, 5.0)).unwrap();
        assert_eq!(a, b);
    }
}
