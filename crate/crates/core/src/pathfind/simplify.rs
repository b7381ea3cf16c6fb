use super::{NavGrid, Path};
use crate::geometry::Vec2;

/// Every cell whose closed square touches the segment `a`–`b`.
///
/// Touching a cell corner counts, so a segment through a grid vertex
/// includes all cells sharing that vertex. Cells outside the grid are
/// skipped; use [`segment_visible`] to treat leaving the grid as blocked.
pub fn supercover_cells(grid: &NavGrid, a: Vec2, b: Vec2) -> Vec<(usize, usize)> {
    let to_cell = |p: Vec2| {
        (
            (p.x - grid.origin.x) / grid.cell_size,
            (p.y - grid.origin.y) / grid.cell_size,
        )
    };
    let (ax, ay) = to_cell(a);
    let (bx, by) = to_cell(b);
    let (x0, y0, x1, y1) = if ax <= bx {
        (ax, ay, bx, by)
    } else {
        (bx, by, ax, ay)
    };

    let clamp_range = |lo: f64, hi: f64, n: usize| -> Option<(usize, usize)> {
        let first = (lo.ceil() - 1.0).max(0.0);
        let last = hi.floor().min(n as f64 - 1.0);
        (first <= last).then_some((first as usize, last as usize))
    };

    let y_at = |x: f64| {
        if x1 == x0 {
            y0
        } else {
            y0 + (y1 - y0) * (x - x0) / (x1 - x0)
        }
    };

    let mut cells = Vec::new();
    let Some((c_first, c_last)) = clamp_range(x0, x1, grid.cols) else {
        return cells;
    };
    for col in c_first..=c_last {
        let (ylo, yhi) = if x1 == x0 {
            (y0.min(y1), y0.max(y1))
        } else {
            let xa = x0.max(col as f64);
            let xb = x1.min(col as f64 + 1.0);
            let (ya, yb) = (y_at(xa), y_at(xb));
            (ya.min(yb), ya.max(yb))
        };
        if let Some((r_first, r_last)) = clamp_range(ylo, yhi, grid.rows) {
            cells.extend((r_first..=r_last).map(|row| (col, row)));
        }
    }
    cells
}

/// True when the segment stays on the grid and touches no blocked cell.
pub fn segment_visible(grid: &NavGrid, a: Vec2, b: Vec2) -> bool {
    if grid.cell_of(a).is_none() || grid.cell_of(b).is_none() {
        return false;
    }
    supercover_cells(grid, a, b)
        .into_iter()
        .all(|(c, r)| !grid.is_blocked(c, r))
}

/// Greedy string pulling: from each kept waypoint jump to the farthest later
/// waypoint that is directly visible. Endpoints are kept; the cost becomes
/// the Euclidean length of the simplified polyline.
pub fn simplify_path(grid: &NavGrid, path: &Path) -> Path {
    let pts = &path.waypoints;
    if pts.len() <= 2 {
        return Path {
            waypoints: pts.clone(),
            cost: Path::polyline_length(pts),
        };
    }
    let mut kept = vec![pts[0]];
    let mut i = 0;
    while i + 1 < pts.len() {
        let next = (i + 2..pts.len())
            .rev()
            .find(|&j| segment_visible(grid, pts[i], pts[j]))
            .unwrap_or(i + 1);
        kept.push(pts[next]);
        i = next;
    }
    let cost = Path::polyline_length(&kept);
    Path {
        waypoints: kept,
        cost,
    }
}
