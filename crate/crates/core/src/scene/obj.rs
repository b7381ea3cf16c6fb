//! Minimal Wavefront OBJ import: `v`, `o`, `g` and `f` lines are read, every
//! other directive is skipped. Each object/group becomes one locked,
//! axis-aligned obstacle covering the ground-plane bounding box of the
//! vertices declared inside it.

use super::ObstacleRect;
use crate::geometry::Vec2;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ObjError {
    #[error("model contains no vertices")]
    EmptyModel,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

struct Group {
    vertices: Vec<[f64; 3]>,
}

fn parse_err(line: usize, message: impl Into<String>) -> ObjError {
    ObjError::Parse {
        line,
        message: message.into(),
    }
}

/// Converts an OBJ document into obstacles with ids `obj{n}`.
///
/// Ground plane is X–Z (Y-up); when every vertex shares one Z value the
/// model is treated as flat and X–Y is used instead.
pub fn obj_to_obstacles(text: &str) -> Result<Vec<ObstacleRect>, ObjError> {
    let mut groups = vec![Group {
        vertices: Vec::new(),
    }];
    let mut vertex_count = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        let mut parts = line.split_whitespace();
        let Some(keyword) = parts.next() else {
            continue;
        };
        match keyword {
            "v" => {
                let coords: Vec<f64> = parts
                    .map(|p| {
                        p.parse::<f64>()
                            .map_err(|_| parse_err(line_no, format!("invalid number {p:?}")))
                    })
                    .collect::<Result<_, _>>()?;
                // x y z [w] and the common x y z r g b color extension.
                if !matches!(coords.len(), 3 | 4 | 6) {
                    return Err(parse_err(line_no, "vertex needs 3 coordinates"));
                }
                if coords.iter().any(|c| !c.is_finite()) {
                    return Err(parse_err(line_no, "non-finite vertex coordinate"));
                }
                groups
                    .last_mut()
                    .expect("at least one group")
                    .vertices
                    .push([coords[0], coords[1], coords[2]]);
                vertex_count += 1;
            }
            "o" | "g" => groups.push(Group {
                vertices: Vec::new(),
            }),
            "f" => {
                let refs: Vec<&str> = parts.collect();
                if refs.len() < 3 {
                    return Err(parse_err(line_no, "face needs at least 3 vertices"));
                }
                for r in refs {
                    let index = r.split('/').next().unwrap_or("");
                    let n: i64 = index
                        .parse()
                        .map_err(|_| parse_err(line_no, format!("invalid face index {r:?}")))?;
                    let resolved = if n < 0 {
                        vertex_count as i64 + n + 1
                    } else {
                        n
                    };
                    if n == 0 || resolved < 1 || resolved > vertex_count as i64 {
                        return Err(parse_err(line_no, format!("face index {n} out of range")));
                    }
                }
            }
            _ => {}
        }
    }

    if vertex_count == 0 {
        return Err(ObjError::EmptyModel);
    }

    let first_z = groups
        .iter()
        .flat_map(|g| &g.vertices)
        .next()
        .expect("nonempty")[2];
    let flat = groups
        .iter()
        .flat_map(|g| &g.vertices)
        .all(|v| v[2] == first_z);
    let project = |v: &[f64; 3]| {
        if flat {
            Vec2::new(v[0], v[1])
        } else {
            Vec2::new(v[0], v[2])
        }
    };

    Ok(groups
        .iter()
        .filter(|g| !g.vertices.is_empty())
        .enumerate()
        .map(|(n, g)| {
            let mut min = project(&g.vertices[0]);
            let mut max = min;
            for p in g.vertices.iter().map(project) {
                min = Vec2::new(min.x.min(p.x), min.y.min(p.y));
                max = Vec2::new(max.x.max(p.x), max.y.max(p.y));
            }
            ObstacleRect {
                id: format!("obj{n}"),
                center: (min + max) * 0.5,
                width: max.x - min.x,
                height: max.y - min.y,
                rotation: 0.0,
                locked: true,
            }
        })
        .collect())
}
