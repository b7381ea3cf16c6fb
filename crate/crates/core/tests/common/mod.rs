//! Oracles and fixtures shared by the integration tests.
#![allow(dead_code)]

use crowdsim::pathfind::NavGrid;
use crowdsim::scene::{
    parse_scene, Goal, ObstacleRect, PresetKind, Scene, SpawnerArea, WorldExtents,
};
use crowdsim::Vec2;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;
use std::path::PathBuf;

pub fn scenes_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenes")
}

pub fn scene_path(name: &str) -> PathBuf {
    scenes_dir().join(format!("{name}.json"))
}

pub fn load_scene(name: &str) -> Scene {
    parse_scene(&std::fs::read_to_string(scene_path(name)).unwrap()).unwrap()
}

/// Path length as `straight + diagonal·√2` moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Len {
    pub straight: i64,
    pub diagonal: i64,
}

impl Len {
    pub fn plus(self, diagonal: bool) -> Len {
        if diagonal {
            Len {
                diagonal: self.diagonal + 1,
                ..self
            }
        } else {
            Len {
                straight: self.straight + 1,
                ..self
            }
        }
    }
}

/// Exact comparison of a1 + b1·√2 against a2 + b2·√2.
pub fn cmp_len(x: Len, y: Len) -> Ordering {
    // Compare a against b·√2 where a = Δstraight, b = -Δdiagonal.
    let a = x.straight - y.straight;
    let b = y.diagonal - x.diagonal;
    match (a.signum(), b.signum()) {
        (0, 0) => Ordering::Equal,
        (sa, sb) if sa >= 0 && sb <= 0 => Ordering::Greater,
        (sa, sb) if sa <= 0 && sb >= 0 => Ordering::Less,
        (1, 1) => (a * a).cmp(&(2 * b * b)),
        _ => (2 * b * b).cmp(&(a * a)),
    }
}

const NEIGHBORS: [(i64, i64); 8] = [
    (-1, -1),
    (0, -1),
    (1, -1),
    (-1, 0),
    (1, 0),
    (-1, 1),
    (0, 1),
    (1, 1),
];

pub fn free(grid: &NavGrid, c: i64, r: i64, cols: i64, rows: i64) -> bool {
    c >= 0 && r >= 0 && c < cols && r < rows && !grid.is_blocked(c as usize, r as usize)
}

/// O(V²) Dijkstra, no heap, no heuristic. Diagonal moves need both adjacent
/// orthogonal cells free.
pub fn dijkstra(
    grid: &NavGrid,
    cols: usize,
    rows: usize,
    start: (usize, usize),
    goal: (usize, usize),
) -> Option<Len> {
    let n = cols * rows;
    let idx = |c: usize, r: usize| r * cols + c;
    let mut dist: Vec<Option<Len>> = vec![None; n];
    let mut done = vec![false; n];
    dist[idx(start.0, start.1)] = Some(Len {
        straight: 0,
        diagonal: 0,
    });
    loop {
        let mut best: Option<usize> = None;
        for i in 0..n {
            if done[i] {
                continue;
            }
            if let Some(d) = dist[i] {
                if best.is_none_or(|b| cmp_len(d, dist[b].unwrap()) == Ordering::Less) {
                    best = Some(i);
                }
            }
        }
        let u = best?;
        if u == idx(goal.0, goal.1) {
            return dist[u];
        }
        done[u] = true;
        let (c, r) = ((u % cols) as i64, (u / cols) as i64);
        let (ci, ri) = (cols as i64, rows as i64);
        for (dc, dr) in NEIGHBORS {
            let (nc, nr) = (c + dc, r + dr);
            if !free(grid, nc, nr, ci, ri) {
                continue;
            }
            let diagonal = dc != 0 && dr != 0;
            if diagonal && !(free(grid, c + dc, r, ci, ri) && free(grid, c, r + dr, ci, ri)) {
                continue;
            }
            let cand = dist[u].unwrap().plus(diagonal);
            let v = idx(nc as usize, nr as usize);
            if dist[v].is_none_or(|old| cmp_len(cand, old) == Ordering::Less) {
                dist[v] = Some(cand);
            }
        }
    }
}

/// Move counts of a returned cell-center path, checking every move is legal.
pub fn measure(grid: &NavGrid, waypoints: &[Vec2]) -> Len {
    let cells: Vec<(i64, i64)> = waypoints
        .iter()
        .map(|p| {
            let (c, r) = grid.cell_of(*p).unwrap();
            assert_eq!(grid.cell_center(c, r), *p, "waypoint is not a cell center");
            assert!(!grid.is_blocked(c, r));
            (c as i64, r as i64)
        })
        .collect();
    let mut len = Len {
        straight: 0,
        diagonal: 0,
    };
    for w in cells.windows(2) {
        let (dc, dr) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
        assert!(
            dc.abs() <= 1 && dr.abs() <= 1 && (dc, dr) != (0, 0),
            "non-adjacent move"
        );
        let diagonal = dc != 0 && dr != 0;
        if diagonal {
            assert!(!grid.is_blocked((w[0].0 + dc) as usize, w[0].1 as usize));
            assert!(!grid.is_blocked(w[0].0 as usize, (w[0].1 + dr) as usize));
        }
        len = len.plus(diagonal);
    }
    len
}

pub fn random_grid(rng: &mut ChaCha8Rng, n: usize, cell: f64, p: f64) -> NavGrid {
    let blocked = (0..n * n).map(|_| rng.random_bool(p)).collect();
    NavGrid::from_blocked(n, n, cell, blocked)
}

pub fn random_free(rng: &mut ChaCha8Rng, grid: &NavGrid, n: usize) -> (usize, usize) {
    loop {
        let c = (rng.random_range(0..n), rng.random_range(0..n));
        if !grid.is_blocked(c.0, c.1) {
            return c;
        }
    }
}

/// Distance from `p` to the convex hull of `points` is at most `tol`.
pub fn in_convex_hull(p: Vec2, points: &[Vec2], tol: f64) -> bool {
    let mut pts: Vec<Vec2> = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    let seg_dist = |a: Vec2, b: Vec2| {
        let ab = b - a;
        let len2 = ab.dot(ab);
        let t = if len2 == 0.0 {
            0.0
        } else {
            ((p - a).dot(ab) / len2).clamp(0.0, 1.0)
        };
        p.distance(a + ab * t)
    };
    if pts.len() == 1 {
        return p.distance(pts[0]) <= tol;
    }
    // Andrew's monotone chain.
    let mut hull: Vec<Vec2> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Vec2>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &q in iter {
            while hull.len() >= start + 2
                && (hull[hull.len() - 1] - hull[hull.len() - 2]).cross(q - hull[hull.len() - 2])
                    <= 0.0
            {
                hull.pop();
            }
            hull.push(q);
        }
        hull.pop();
    }
    if hull.len() < 3 {
        return hull.windows(2).any(|w| seg_dist(w[0], w[1]) <= tol)
            || seg_dist(hull[0], *hull.last().unwrap()) <= tol;
    }
    let inside =
        (0..hull.len()).all(|i| (hull[(i + 1) % hull.len()] - hull[i]).cross(p - hull[i]) >= 0.0);
    inside || (0..hull.len()).any(|i| seg_dist(hull[i], hull[(i + 1) % hull.len()]) <= tol)
}

/// Valid scenes by construction: obstacles stay 5 m clear of the world edge
/// and are at most 6 m per side, so every footprint fits.
pub fn scene_strategy() -> impl Strategy<Value = Scene> {
    (20.0f64..60.0, 20.0f64..60.0).prop_flat_map(|(w, h)| {
        let goals = prop::collection::vec((1.0..w - 1.0, 1.0..h - 1.0), 1..4);
        let spawners = prop::collection::vec(
            (
                0.0..w - 2.0,
                0.0..h - 2.0,
                1u32..=10,
                any::<prop::sample::Index>(),
            ),
            0..5,
        );
        let obstacles = prop::collection::vec(
            (
                5.0..w - 5.0,
                5.0..h - 5.0,
                2.0f64..6.0,
                2.0f64..6.0,
                -720.0f64..720.0,
            ),
            0..5,
        );
        let preset = prop::option::of((
            0.0..w - 18.0,
            0.0..h - 18.0,
            prop::sample::select(PresetKind::ALL.to_vec()),
        ));
        (Just((w, h)), goals, spawners, obstacles, preset).prop_map(
            |((w, h), goals, spawners, obstacles, preset)| {
                let mut s = Scene::new(WorldExtents {
                    width: w,
                    height: h,
                });
                for (i, (x, y)) in goals.iter().enumerate() {
                    s.goals
                        .push(Goal::new(format!("goal-{i}"), Vec2::new(*x, *y)));
                }
                for (i, (x, y, n, g)) in spawners.into_iter().enumerate() {
                    let goal = &s.goals[g.index(s.goals.len())].id;
                    s.spawners.push(
                        SpawnerArea::new(format!("spawn-{i}"), Vec2::new(x, y), n)
                            .with_goal(goal.clone()),
                    );
                }
                for (i, (x, y, ow, oh, rot)) in obstacles.into_iter().enumerate() {
                    s.obstacles.push(
                        ObstacleRect::new(format!("obst-{i}"), Vec2::new(x, y), ow, oh)
                            .with_rotation(rot),
                    );
                }
                if let Some((x, y, kind)) = preset {
                    s.add_preset("preset", kind, Vec2::new(x, y)).unwrap();
                }
                s
            },
        )
    })
}

/// One spawner of two agents walking 8 m to a goal in the default world.
pub fn small_scene() -> Scene {
    let mut s = Scene::default();
    s.goals.push(Goal::new("g", Vec2::new(10.0, 5.0)));
    s.spawners
        .push(SpawnerArea::new("s", Vec2::new(2.0, 4.0), 2).with_goal("g"));
    s
}

/// `small_scene` with the goal sealed off by four walls. Valid, but no
/// agent can reach it.
pub fn sealed_goal_scene() -> Scene {
    let mut s = small_scene();
    let walls = [
        (10.0, 7.5, 6.0, 2.0),
        (10.0, 2.5, 6.0, 2.0),
        (7.5, 5.0, 2.0, 6.0),
        (12.5, 5.0, 2.0, 6.0),
    ];
    for (i, (cx, cy, w, h)) in walls.into_iter().enumerate() {
        s.obstacles.push(ObstacleRect::new(
            format!("wall-{i}"),
            Vec2::new(cx, cy),
            w,
            h,
        ));
    }
    s
}
