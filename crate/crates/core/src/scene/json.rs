//! Canonical JSON scene documents.
//!
//! Top-level keys appear in the order `version, world, spawners, goals,
//! obstacles, presets`; each collection is sorted by id; numbers use the
//! shortest representation that parses back to the same `f64`.

use super::{Scene, SceneError};
use std::collections::HashSet;

pub const SCENE_FORMAT_VERSION: &str = "1.0";

/// Parses a scene, discarding unknown-field warnings.
pub fn parse_scene(text: &str) -> Result<Scene, SceneError> {
    parse_scene_with_warnings(text).map(|(scene, _)| scene)
}

/// Parses a scene and reports the path of every ignored (unknown) field.
pub fn parse_scene_with_warnings(text: &str) -> Result<(Scene, Vec<String>), SceneError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| SceneError::Parse(e.to_string()))?;

    match value.get("version") {
        Some(serde_json::Value::String(v)) if v == SCENE_FORMAT_VERSION => {}
        Some(serde_json::Value::String(v)) => {
            return Err(SceneError::Version {
                found: v.clone(),
                expected: SCENE_FORMAT_VERSION.to_string(),
            })
        }
        Some(_) => return Err(SceneError::Parse("version must be a string".into())),
        None => return Err(SceneError::Parse("missing field `version`".into())),
    }

    let mut warnings = Vec::new();
    let scene: Scene = serde_ignored::deserialize(value, |path| {
        warnings.push(format!("ignored unknown field {path}"))
    })
    .map_err(|e| SceneError::Parse(e.to_string()))?;

    check_structure(&scene)?;
    Ok((scene.canonicalized(), warnings))
}

fn check_structure(scene: &Scene) -> Result<(), SceneError> {
    fn unique<'a>(ids: impl Iterator<Item = &'a str>) -> Result<HashSet<&'a str>, SceneError> {
        let mut seen = HashSet::new();
        for id in ids {
            if !seen.insert(id) {
                return Err(SceneError::DuplicateId(id.to_string()));
            }
        }
        Ok(seen)
    }
    unique(scene.spawners.iter().map(|s| s.id.as_str()))?;
    unique(scene.presets.iter().map(|p| p.id.as_str()))?;
    let goals = unique(scene.goals.iter().map(|g| g.id.as_str()))?;
    let obstacles = unique(scene.obstacles.iter().map(|o| o.id.as_str()))?;

    for s in &scene.spawners {
        if let Some(goal) = &s.goal_id {
            if !goals.contains(goal.as_str()) {
                return Err(SceneError::Reference(goal.clone()));
            }
        }
    }
    for p in &scene.presets {
        for oid in &p.obstacle_ids {
            if !obstacles.contains(oid.as_str()) {
                return Err(SceneError::Reference(oid.clone()));
            }
        }
    }
    Ok(())
}

/// Emits the canonical document. Structurally equal scenes produce identical bytes.
pub fn serialize_scene(scene: &Scene) -> String {
    let canonical = scene.clone().canonicalized();
    let mut text =
        serde_json::to_string_pretty(&canonical).expect("scene serialization is infallible");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Vec2;
    use crate::scene::{Goal, ObstacleRect, PresetKind, SpawnerArea};

    fn sample() -> Scene {
        let mut s = Scene::default();
        s.goals.push(Goal::new("g1", Vec2::new(25.0, 25.0)));
        s.spawners
            .push(SpawnerArea::new("s1", Vec2::new(1.0, 1.0), 10).with_goal("g1"));
        s.obstacles
            .push(ObstacleRect::new("o1", Vec2::new(12.0, 12.0), 6.0, 2.0).with_rotation(45.0));
        s.add_preset("p1", PresetKind::Bottleneck, Vec2::new(5.0, 20.0))
            .unwrap();
        s.canonicalized()
    }

    #[test]
    fn round_trip_identity() {
        let s = sample();
        let doc = serialize_scene(&s);
        assert_eq!(parse_scene(&doc).unwrap(), s);
    }

    #[test]
    fn rotation_preserved() {
        let doc = serialize_scene(&sample());
        let v: serde_json::Value = serde_json::from_str(&doc).unwrap();
        let o1 = v["obstacles"]
            .as_array()
            .unwrap()
            .iter()
            .find(|o| o["id"] == "o1")
            .unwrap();
        assert_eq!(o1["rotation"], 45.0);
    }

    #[test]
    fn key_order_is_fixed() {
        let doc = serialize_scene(&sample());
        let pos = |k: &str| doc.find(&format!("\"{k}\"")).unwrap();
        assert!(pos("version") < pos("world"));
        assert!(pos("world") < pos("spawners"));
        assert!(pos("spawners") < pos("goals"));
        assert!(pos("goals") < pos("obstacles"));
        assert!(pos("obstacles") < pos("presets"));
    }

    #[test]
    fn insertion_order_does_not_matter() {
        let a = sample();
        let mut b = a.clone();
        b.obstacles.reverse();
        b.goals.reverse();
        assert_eq!(serialize_scene(&a), serialize_scene(&b));
    }

    #[test]
    fn dangling_goal_reference() {
        let doc = r#"{"version":"1.0","world":{"width":30,"height":30},
            "spawners":[{"id":"s","origin":{"x":1,"y":1},"width":2,"height":2,"agent_count":3,"goal_id":"g9"}],
            "goals":[],"obstacles":[],"presets":[]}"#;
        assert_eq!(parse_scene(doc), Err(SceneError::Reference("g9".into())));
    }

    #[test]
    fn dangling_preset_obstacle() {
        let doc = r#"{"version":"1.0","world":{"width":30,"height":30},
            "presets":[{"id":"p","preset_kind":"corridor","anchor":{"x":0,"y":0},"obstacle_ids":["nope"]}]}"#;
        assert_eq!(parse_scene(doc), Err(SceneError::Reference("nope".into())));
    }

    #[test]
    fn truncated_document() {
        let doc = serialize_scene(&sample());
        let cut = &doc[..doc.len() / 2];
        assert!(matches!(parse_scene(cut), Err(SceneError::Parse(_))));
    }

    #[test]
    fn wrong_version() {
        let doc = r#"{"version":"2.0","world":{"width":30,"height":30}}"#;
        assert!(matches!(parse_scene(doc), Err(SceneError::Version { .. })));
    }

    #[test]
    fn unknown_fields_warn() {
        let doc = r#"{"version":"1.0","world":{"width":30,"height":30,"depth":3},"camera":{}}"#;
        let (scene, warnings) = parse_scene_with_warnings(doc).unwrap();
        assert_eq!(scene.world.width, 30.0);
        assert_eq!(warnings.len(), 2, "{warnings:?}");
    }

    #[test]
    fn unknown_preset_kind_is_parse_error() {
        let doc = r#"{"version":"1.0","world":{"width":30,"height":30},
            "presets":[{"id":"p","preset_kind":"maze","anchor":{"x":0,"y":0},"obstacle_ids":[]}]}"#;
        assert!(matches!(parse_scene(doc), Err(SceneError::Parse(_))));
    }

    #[test]
    fn duplicate_ids_rejected() {
        let doc = r#"{"version":"1.0","world":{"width":30,"height":30},
            "goals":[{"id":"g","center":{"x":1,"y":1},"radius":0.5},{"id":"g","center":{"x":2,"y":2},"radius":0.5}]}"#;
        assert_eq!(parse_scene(doc), Err(SceneError::DuplicateId("g".into())));
    }
}
