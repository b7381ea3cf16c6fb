use super::{rng_stream, AgentState, SimError, SimulationConfig, SPAWN_STREAM};
use crate::geometry::{OrientedRect, Vec2};
use crate::pathfind::{plan_path, simplify_path, NavGrid};
use crate::scene::Scene;
use rand::Rng;

/// Rejection-sampling attempts before the separation requirement halves.
pub const ATTEMPTS_PER_ROUND: usize = 1000;
/// Halvings allowed before a spawner is declared unplaceable.
pub const MAX_SEPARATION_HALVINGS: usize = 16;

/// A sampled spawn point and the spawner (by scene index) that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpawnPoint {
    pub spawner: usize,
    pub position: Vec2,
}

/// Samples agent start positions spawner by spawner, uniformly inside each
/// rectangle and outside every obstacle, keeping agents at least
/// `min_spawn_separation` apart. After every [`ATTEMPTS_PER_ROUND`] failed
/// draws the required separation halves.
pub fn sample_spawn_points(
    scene: &Scene,
    config: &SimulationConfig,
) -> Result<Vec<SpawnPoint>, SimError> {
    let mut rng = rng_stream(config.seed, SPAWN_STREAM);
    let obstacles: Vec<OrientedRect> = scene.obstacles.iter().map(|o| o.rect()).collect();
    let mut placed: Vec<SpawnPoint> = Vec::new();

    for (si, spawner) in scene.spawners.iter().enumerate() {
        let area = spawner.rect();
        let buried = obstacles
            .iter()
            .any(|o| area.corners().iter().all(|&c| o.contains(c)));
        if buried {
            return Err(SimError::Spawn {
                spawner_id: spawner.id.clone(),
                reason: "spawner area lies entirely inside an obstacle".into(),
            });
        }
        for _ in 0..spawner.agent_count {
            let mut separation = config.min_spawn_separation;
            let mut found = None;
            'rounds: for _ in 0..=MAX_SEPARATION_HALVINGS {
                for _ in 0..ATTEMPTS_PER_ROUND {
                    let u: f64 = rng.random();
                    let v: f64 = rng.random();
                    let p = spawner.origin + Vec2::new(u * spawner.width, v * spawner.height);
                    if obstacles.iter().any(|o| o.contains(p)) {
                        continue;
                    }
                    if placed.iter().all(|q| q.position.distance(p) >= separation) {
                        found = Some(p);
                        break 'rounds;
                    }
                }
                separation /= 2.0;
            }
            let position = found.ok_or_else(|| SimError::Spawn {
                spawner_id: spawner.id.clone(),
                reason: "no free position left inside the spawner area".into(),
            })?;
            placed.push(SpawnPoint {
                spawner: si,
                position,
            });
        }
    }
    Ok(placed)
}

/// Places every agent and plans its route to the spawner's goal.
///
/// Ids are dense, in spawner order then placement order. The final waypoint
/// is replaced by the goal center itself.
pub fn spawn_agents(
    scene: &Scene,
    grid: &NavGrid,
    config: &SimulationConfig,
) -> Result<Vec<AgentState>, SimError> {
    let points = sample_spawn_points(scene, config)?;
    let mut agents = Vec::with_capacity(points.len());
    for (id, sp) in points.into_iter().enumerate() {
        let spawner = &scene.spawners[sp.spawner];
        let goal_id = spawner
            .goal_id
            .as_deref()
            .ok_or_else(|| SimError::MissingGoal(spawner.id.clone()))?;
        let goal = scene
            .goal(goal_id)
            .ok_or_else(|| SimError::MissingGoal(spawner.id.clone()))?;
        let raw =
            plan_path(grid, sp.position, goal.center).map_err(|e| SimError::UnreachableGoal {
                spawner_id: spawner.id.clone(),
                reason: e,
            })?;
        let mut waypoints = simplify_path(grid, &raw).waypoints;
        if let Some(last) = waypoints.last_mut() {
            *last = goal.center;
        }
        agents.push(AgentState {
            id: id as u32,
            spawner_id: spawner.id.clone(),
            goal_id: goal.id.clone(),
            goal_center: goal.center,
            position: sp.position,
            waypoints,
            waypoint_index: 0,
            goal_direction: Vec2::ZERO,
            arrived: false,
            spawn_step: 0,
            arrived_step: None,
        });
    }
    Ok(agents)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathfind::build_nav_grid;
    use crate::scene::{Goal, ObstacleRect, SpawnerArea};

    fn scene(count: u32) -> Scene {
        let mut s = Scene::default();
        s.goals.push(Goal::new("g", Vec2::new(25.0, 25.0)));
        s.spawners
            .push(SpawnerArea::new("s", Vec2::new(3.0, 3.0), count).with_goal("g"));
        s
    }

    fn spawn(s: &Scene, seed: u64) -> Result<Vec<AgentState>, SimError> {
        let cfg = SimulationConfig::default().with_seed(seed);
        let grid = build_nav_grid(s, cfg.nav_cell_size, cfg.nav_clearance);
        spawn_agents(s, &grid, &cfg)
    }

    #[test]
    fn ten_agents_inside_area() {
        let s = scene(10);
        let agents = spawn(&s, 1).unwrap();
        assert_eq!(agents.len(), 10);
        let area = s.spawners[0].rect();
        for (i, a) in agents.iter().enumerate() {
            assert_eq!(a.id, i as u32);
            assert!(area.contains(a.position));
            assert_eq!(*a.waypoints.last().unwrap(), Vec2::new(25.0, 25.0));
        }
        for a in &agents {
            for b in &agents {
                if a.id < b.id {
                    assert!(a.position.distance(b.position) >= 0.4);
                }
            }
        }
    }

    #[test]
    fn single_agent() {
        let agents = spawn(&scene(1), 3).unwrap();
        assert_eq!(agents.len(), 1);
    }

    #[test]
    fn deterministic() {
        let s = scene(10);
        let a = spawn(&s, 9).unwrap();
        let b = spawn(&s, 9).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn crowded_area_relaxes_separation() {
        // 0.5 m square cannot hold 10 agents 0.4 m apart.
        let mut s = scene(10);
        s.spawners[0].width = 0.5;
        s.spawners[0].height = 0.5;
        assert_eq!(spawn(&s, 5).unwrap().len(), 10);
    }

    #[test]
    fn buried_spawner_fails() {
        let mut s = scene(3);
        s.obstacles
            .push(ObstacleRect::new("o", Vec2::new(4.0, 4.0), 4.0, 4.0));
        assert!(matches!(spawn(&s, 1), Err(SimError::Spawn { .. })));
    }

    #[test]
    fn unreachable_goal_names_spawner() {
        let mut s = scene(2);
        // Box the goal in with four walls.
        for (id, c, w, h) in [
            ("n", Vec2::new(25.0, 28.0), 8.0, 2.0),
            ("s", Vec2::new(25.0, 22.0), 8.0, 2.0),
            ("e", Vec2::new(28.0, 25.0), 2.0, 8.0),
            ("w", Vec2::new(22.0, 25.0), 2.0, 8.0),
        ] {
            s.obstacles.push(ObstacleRect::new(id, c, w, h));
        }
        match spawn(&s, 1) {
            Err(SimError::UnreachableGoal { spawner_id, .. }) => assert_eq!(spawner_id, "s"),
            other => panic!("unexpected {other:?}"),
        }
    }
}
