use super::{Scene, GOAL_RADIUS};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// Authoring limits. Defaults: 10 agents per spawner, 100 agents per scene,
/// obstacle sides between 2 m and 20 m.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SceneLimits {
    pub max_agents_per_spawner: u32,
    pub max_agents_total: u32,
    pub obstacle_min_side: f64,
    pub obstacle_max_side: f64,
}

impl Default for SceneLimits {
    fn default() -> Self {
        Self {
            max_agents_per_spawner: 10,
            max_agents_total: 100,
            obstacle_min_side: 2.0,
            obstacle_max_side: 20.0,
        }
    }
}

impl SceneLimits {
    pub fn is_valid(&self) -> bool {
        self.max_agents_per_spawner > 0
            && self.max_agents_total > 0
            && self.obstacle_min_side > 0.0
            && self.obstacle_min_side <= self.obstacle_max_side
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Issue {
    pub severity: Severity,
    pub object_id: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn errors(&self) -> impl Iterator<Item = &Issue> {
        self.issues.iter().filter(|i| i.severity == Severity::Error)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Issue> {
        self.issues
            .iter()
            .filter(|i| i.severity == Severity::Warning)
    }

    /// A runnable scene has no errors. Missing goals are errors, so this is `ok`.
    pub fn is_runnable(&self) -> bool {
        self.ok
    }
}

struct Collector(Vec<Issue>);

impl Collector {
    fn error(&mut self, id: &str, message: impl Into<String>) {
        self.push(Severity::Error, id, message);
    }
    fn warning(&mut self, id: &str, message: impl Into<String>) {
        self.push(Severity::Warning, id, message);
    }
    fn push(&mut self, severity: Severity, id: &str, message: impl Into<String>) {
        self.0.push(Issue {
            severity,
            object_id: id.to_string(),
            message: message.into(),
        });
    }
}

fn check_unique<'a>(ids: impl Iterator<Item = &'a str>, kind: &str, out: &mut Collector) {
    let mut seen = HashSet::new();
    for id in ids {
        if !seen.insert(id) {
            out.error(id, format!("duplicate {kind} id"));
        }
    }
}

/// Reports every violated authoring constraint. Never fails; a scene is
/// runnable iff the report is `ok`.
pub fn validate_scene(scene: &Scene, limits: &SceneLimits) -> ValidationReport {
    let mut out = Collector(Vec::new());
    let world = scene.world;

    if !(world.width.is_finite()
        && world.height.is_finite()
        && world.width > 0.0
        && world.height > 0.0)
    {
        out.error("world", "world extents must be positive");
    }

    check_unique(
        scene.spawners.iter().map(|s| s.id.as_str()),
        "spawner",
        &mut out,
    );
    check_unique(scene.goals.iter().map(|g| g.id.as_str()), "goal", &mut out);
    check_unique(
        scene.obstacles.iter().map(|o| o.id.as_str()),
        "obstacle",
        &mut out,
    );
    check_unique(
        scene.presets.iter().map(|p| p.id.as_str()),
        "preset",
        &mut out,
    );

    for g in &scene.goals {
        if !g.center.is_finite() || !world.contains(g.center) {
            out.error(&g.id, "goal center outside world");
        }
        if g.radius != GOAL_RADIUS {
            out.error(&g.id, format!("goal radius is fixed at {GOAL_RADIUS} m"));
        }
        if scene.obstacles.iter().any(|o| o.rect().contains(g.center)) {
            out.warning(&g.id, "goal lies inside an obstacle");
        }
    }

    for s in &scene.spawners {
        if s.agent_count == 0 {
            out.error(&s.id, "agent_count must be at least 1");
        } else if s.agent_count > limits.max_agents_per_spawner {
            out.error(
                &s.id,
                format!("agent_count exceeds {}", limits.max_agents_per_spawner),
            );
        }
        let far = s.origin + crate::geometry::Vec2::new(s.width, s.height);
        if !(s.width > 0.0 && s.height > 0.0) || !s.origin.is_finite() || !far.is_finite() {
            out.error(&s.id, "spawner area must have positive finite size");
        } else if !world.contains(s.origin) || !world.contains(far) {
            out.error(&s.id, "spawner area outside world");
        }
        match &s.goal_id {
            None => out.error(&s.id, "spawner has no goal"),
            Some(goal) if scene.goal(goal).is_none() => {
                out.error(&s.id, format!("spawner references unknown goal {goal}"))
            }
            Some(_) => {}
        }
        if scene.obstacles.iter().any(|o| {
            let r = o.rect();
            s.rect().corners().iter().any(|&c| r.contains(c))
        }) {
            out.warning(&s.id, "spawner area overlaps an obstacle");
        }
    }

    let total = scene.total_agents();
    if total > u64::from(limits.max_agents_total) {
        out.error(
            "scene",
            format!("total agents exceed {} ({total})", limits.max_agents_total),
        );
    }

    let owned: HashSet<&str> = scene
        .presets
        .iter()
        .flat_map(|p| p.obstacle_ids.iter().map(String::as_str))
        .collect();
    for o in &scene.obstacles {
        if !o.center.is_finite()
            || !o.width.is_finite()
            || !o.height.is_finite()
            || !o.rotation.is_finite()
        {
            out.error(&o.id, "obstacle has non-finite geometry");
            continue;
        }
        if !o.locked {
            let (lo, hi) = (limits.obstacle_min_side, limits.obstacle_max_side);
            if o.width.min(o.height) < lo {
                out.error(&o.id, format!("side below {lo} m minimum"));
            }
            if o.width.max(o.height) > hi {
                out.error(&o.id, format!("side above {hi} m maximum"));
            }
        } else if !owned.contains(o.id.as_str()) {
            out.warning(&o.id, "locked obstacle is not owned by any preset");
        }
        if !(o.width > 0.0 && o.height > 0.0) {
            out.error(&o.id, "obstacle size must be positive");
        }
        if !o.rect().corners().iter().all(|&c| world.contains(c)) {
            out.error(&o.id, "obstacle footprint outside world");
        }
    }

    for p in &scene.presets {
        for oid in &p.obstacle_ids {
            match scene.obstacle(oid) {
                None => out.error(&p.id, format!("preset references unknown obstacle {oid}")),
                Some(o) if !o.locked => {
                    out.error(&p.id, format!("preset obstacle {oid} is not locked"))
                }
                Some(_) => {}
            }
        }
    }

    let issues = out.0;
    ValidationReport {
        ok: !issues.iter().any(|i| i.severity == Severity::Error),
        issues,
    }
}
