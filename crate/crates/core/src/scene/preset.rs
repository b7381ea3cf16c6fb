//! Built-in obstacle arrangements.
//!
//! Every preset is a fixed table of axis-aligned walls expressed relative to
//! the anchor, which is the lower-left corner of the preset's bounding box.

use super::{ObstacleRect, PresetInstance, WorldExtents};
use crate::geometry::Vec2;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PresetKind {
    /// Two parallel 12x2 walls with a 4 m passage between them.
    Corridor,
    /// Two collinear 8x2 walls separated by a 1.5 m gap.
    Bottleneck,
    /// Four 3x3 pillars centered on the corners of a 10 m square.
    FourPillarHall,
    /// A 4 m horizontal corridor with a 4 m stem branching downward.
    TJunction,
    /// Four 6x6 blocks leaving two perpendicular 4 m streets.
    Crossing,
}

impl PresetKind {
    pub const ALL: [PresetKind; 5] = [
        PresetKind::Corridor,
        PresetKind::Bottleneck,
        PresetKind::FourPillarHall,
        PresetKind::TJunction,
        PresetKind::Crossing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PresetKind::Corridor => "corridor",
            PresetKind::Bottleneck => "bottleneck",
            PresetKind::FourPillarHall => "four_pillar_hall",
            PresetKind::TJunction => "t_junction",
            PresetKind::Crossing => "crossing",
        }
    }

    /// The wall table: (center offset from anchor, width, height).
    pub fn walls(self) -> &'static [PresetWall] {
        match self {
            PresetKind::Corridor => &CORRIDOR,
            PresetKind::Bottleneck => &BOTTLENECK,
            PresetKind::FourPillarHall => &FOUR_PILLAR_HALL,
            PresetKind::TJunction => &T_JUNCTION,
            PresetKind::Crossing => &CROSSING,
        }
    }

    /// Size of the bounding box of all walls.
    pub fn footprint(self) -> Vec2 {
        self.walls().iter().fold(Vec2::ZERO, |acc, w| {
            Vec2::new(
                acc.x.max(w.center.x + w.width / 2.0),
                acc.y.max(w.center.y + w.height / 2.0),
            )
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PresetWall {
    pub center: Vec2,
    pub width: f64,
    pub height: f64,
}

const fn wall(cx: f64, cy: f64, width: f64, height: f64) -> PresetWall {
    PresetWall {
        center: Vec2::new(cx, cy),
        width,
        height,
    }
}

// y in [0,2] and [6,8]; passage y in (2,6).
const CORRIDOR: [PresetWall; 2] = [wall(6.0, 1.0, 12.0, 2.0), wall(6.0, 7.0, 12.0, 2.0)];

// x in [0,8] and [9.5,17.5]; gap x in (8,9.5).
const BOTTLENECK: [PresetWall; 2] = [wall(4.0, 1.0, 8.0, 2.0), wall(13.5, 1.0, 8.0, 2.0)];

const FOUR_PILLAR_HALL: [PresetWall; 4] = [
    wall(1.5, 1.5, 3.0, 3.0),
    wall(11.5, 1.5, 3.0, 3.0),
    wall(1.5, 11.5, 3.0, 3.0),
    wall(11.5, 11.5, 3.0, 3.0),
];

// Top wall y in [10,12]; blocks below leave the stem x in (6,10) and the
// horizontal corridor y in (6,10).
const T_JUNCTION: [PresetWall; 3] = [
    wall(8.0, 11.0, 16.0, 2.0),
    wall(3.0, 3.0, 6.0, 6.0),
    wall(13.0, 3.0, 6.0, 6.0),
];

// Streets x in (6,10) and y in (6,10).
const CROSSING: [PresetWall; 4] = [
    wall(3.0, 3.0, 6.0, 6.0),
    wall(13.0, 3.0, 6.0, 6.0),
    wall(3.0, 13.0, 6.0, 6.0),
    wall(13.0, 13.0, 6.0, 6.0),
];

#[derive(Debug, Error, PartialEq)]
#[error("preset {kind} anchored at ({x}, {y}) does not fit inside the {width}x{height} world")]
pub struct PlacementError {
    pub kind: &'static str,
    pub x: f64,
    pub y: f64,
    pub width: f64,
    pub height: f64,
}

/// Creates a preset instance plus its locked obstacles, translated by `anchor`.
///
/// Obstacle ids are `{id}-w{n}` in table order.
pub fn instantiate_preset(
    id: &str,
    kind: PresetKind,
    anchor: Vec2,
    world: WorldExtents,
) -> Result<(PresetInstance, Vec<ObstacleRect>), PlacementError> {
    let size = kind.footprint();
    let far = anchor + size;
    if !anchor.is_finite() || !world.contains(anchor) || !world.contains(far) {
        return Err(PlacementError {
            kind: kind.name(),
            x: anchor.x,
            y: anchor.y,
            width: world.width,
            height: world.height,
        });
    }
    let obstacles: Vec<ObstacleRect> = kind
        .walls()
        .iter()
        .enumerate()
        .map(|(n, w)| ObstacleRect {
            id: format!("{id}-w{n}"),
            center: anchor + w.center,
            width: w.width,
            height: w.height,
            rotation: 0.0,
            locked: true,
        })
        .collect();
    let instance = PresetInstance {
        id: id.to_string(),
        preset_kind: kind,
        anchor,
        obstacle_ids: obstacles.iter().map(|o| o.id.clone()).collect(),
    };
    Ok((instance, obstacles))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn world() -> WorldExtents {
        WorldExtents::default()
    }

    #[test]
    fn corridor_passage_is_four_meters() {
        let (inst, walls) =
            instantiate_preset("p", PresetKind::Corridor, Vec2::ZERO, world()).unwrap();
        assert_eq!(walls.len(), 2);
        assert_eq!(inst.obstacle_ids, vec!["p-w0", "p-w1"]);
        assert!(walls
            .iter()
            .all(|w| w.locked && w.width == 12.0 && w.height == 2.0));
        let (lo, hi) = (walls[0].rect().bounds(), walls[1].rect().bounds());
        // Inner faces: top of lower wall to bottom of upper wall.
        assert_eq!(hi.0.y - lo.1.y, 4.0);
        // Walls are parallel and overlap fully along x.
        assert_eq!((lo.0.x, lo.1.x), (hi.0.x, hi.1.x));
    }

    #[test]
    fn bottleneck_gap_is_one_and_a_half_meters() {
        let (_, walls) =
            instantiate_preset("b", PresetKind::Bottleneck, Vec2::ZERO, world()).unwrap();
        assert_eq!(walls.len(), 2);
        assert!(walls
            .iter()
            .all(|w| w.width == 8.0 && w.height == 2.0 && w.locked));
        let (a, b) = (walls[0].rect().bounds(), walls[1].rect().bounds());
        assert_eq!(b.0.x - a.1.x, 1.5);
        assert_eq!(a.0.y, b.0.y);
    }

    #[test]
    fn four_pillars_on_ten_meter_square() {
        let (_, walls) =
            instantiate_preset("h", PresetKind::FourPillarHall, Vec2::ZERO, world()).unwrap();
        assert_eq!(walls.len(), 4);
        let c: Vec<Vec2> = walls.iter().map(|w| w.center).collect();
        assert_eq!(c[1].x - c[0].x, 10.0);
        assert_eq!(c[2].y - c[0].y, 10.0);
        assert!(walls.iter().all(|w| w.width == 3.0 && w.height == 3.0));
    }

    #[test]
    fn anchor_translates_every_wall() {
        let anchor = Vec2::new(3.0, 4.5);
        for kind in PresetKind::ALL {
            let (_, base) = instantiate_preset("k", kind, Vec2::ZERO, world()).unwrap();
            let (_, moved) = instantiate_preset("k", kind, anchor, world()).unwrap();
            for (b, m) in base.iter().zip(&moved) {
                assert_eq!(m.center, b.center + anchor);
            }
        }
    }

    #[test]
    fn placement_outside_world_rejected() {
        for kind in PresetKind::ALL {
            let err = instantiate_preset("x", kind, Vec2::new(25.0, 25.0), world());
            assert!(err.is_err(), "{kind:?}");
            assert!(instantiate_preset("x", kind, Vec2::new(-1.0, 0.0), world()).is_err());
        }
    }
}
