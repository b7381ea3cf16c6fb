use crate::engine::SimulationResult;
use crate::geometry::Vec2;
use crate::scene::Scene;

pub const PLOT_PIXELS_PER_METER: f64 = 10.0;

const BACKGROUND: [u8; 3] = [255, 255, 255];
const OBSTACLE: [u8; 3] = [150, 150, 150];
const GOAL: [u8; 3] = [40, 160, 60];
const TRACK: [u8; 3] = [200, 30, 30];

/// RGB image, row 0 at the top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Raster {
    width: usize,
    height: usize,
    pixels: Vec<[u8; 3]>,
}

impl Raster {
    pub fn new(width: usize, height: usize, fill: [u8; 3]) -> Self {
        Self {
            width,
            height,
            pixels: vec![fill; width * height],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[[u8; 3]] {
        &self.pixels
    }

    pub fn get(&self, x: usize, y: usize) -> [u8; 3] {
        self.pixels[y * self.width + x]
    }

    pub fn set(&mut self, x: usize, y: usize, rgb: [u8; 3]) {
        self.pixels[y * self.width + x] = rgb;
    }

    fn set_signed(&mut self, x: i64, y: i64, rgb: [u8; 3]) {
        if x >= 0 && y >= 0 && (x as usize) < self.width && (y as usize) < self.height {
            self.set(x as usize, y as usize, rgb);
        }
    }

    /// Binary PPM (P6).
    pub fn to_ppm(&self) -> Vec<u8> {
        let mut out = format!("P6\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.reserve(self.pixels.len() * 3);
        for p in &self.pixels {
            out.extend_from_slice(p);
        }
        out
    }

    /// Bresenham line, endpoints included.
    fn line(&mut self, (mut x0, mut y0): (i64, i64), (x1, y1): (i64, i64), rgb: [u8; 3]) {
        let dx = (x1 - x0).abs();
        let dy = -(y1 - y0).abs();
        let sx = if x0 < x1 { 1 } else { -1 };
        let sy = if y0 < y1 { 1 } else { -1 };
        let mut err = dx + dy;
        loop {
            self.set_signed(x0, y0, rgb);
            if x0 == x1 && y0 == y1 {
                break;
            }
            let e2 = 2 * err;
            if e2 >= dy {
                err += dy;
                x0 += sx;
            }
            if e2 <= dx {
                err += dx;
                y0 += sy;
            }
        }
    }
}

struct Frame {
    scale: f64,
    height: usize,
}

impl Frame {
    fn world_of(&self, px: usize, py: usize) -> Vec2 {
        Vec2::new(
            (px as f64 + 0.5) / self.scale,
            (self.height as f64 - py as f64 - 0.5) / self.scale,
        )
    }

    fn pixel_of(&self, p: Vec2) -> (i64, i64) {
        let x = (p.x * self.scale).floor() as i64;
        let y = self.height as i64 - 1 - (p.y * self.scale).floor() as i64;
        (x, y)
    }
}

/// Obstacles in gray, goals as filled circles, one red polyline per agent.
pub fn render_trajectory_plot(scene: &Scene, result: &SimulationResult, px_per_m: f64) -> Raster {
    let width = ((result.world.width * px_per_m).round() as usize).max(1);
    let height = ((result.world.height * px_per_m).round() as usize).max(1);
    let frame = Frame {
        scale: px_per_m,
        height,
    };
    let mut img = Raster::new(width, height, BACKGROUND);
    let rects: Vec<_> = scene.obstacles.iter().map(|o| o.rect()).collect();
    for py in 0..height {
        for px in 0..width {
            let w = frame.world_of(px, py);
            if rects.iter().any(|r| r.contains(w)) {
                img.set(px, py, OBSTACLE);
            } else if scene.goals.iter().any(|g| w.distance(g.center) <= g.radius) {
                img.set(px, py, GOAL);
            }
        }
    }
    for track in &result.agents {
        let pts: Vec<_> = track
            .trajectory
            .iter()
            .map(|&p| frame.pixel_of(p))
            .collect();
        match pts.as_slice() {
            [] => {}
            [only] => img.set_signed(only.0, only.1, TRACK),
            _ => {
                for w in pts.windows(2) {
                    img.line(w[0], w[1], TRACK);
                }
            }
        }
    }
    img
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::AgentTrack;
    use crate::scene::{Goal, ObstacleRect, WorldExtents};

    #[test]
    fn ppm_header_and_size() {
        let r = Raster::new(3, 2, [1, 2, 3]);
        let ppm = r.to_ppm();
        assert!(ppm.starts_with(b"P6\n3 2\n255\n"));
        assert_eq!(ppm.len(), b"P6\n3 2\n255\n".len() + 18);
    }

    #[test]
    fn plot_layers() {
        let mut scene = Scene::default();
        scene
            .obstacles
            .push(ObstacleRect::new("o", Vec2::new(5.0, 5.0), 2.0, 2.0));
        scene.goals.push(Goal::new("g", Vec2::new(25.0, 25.0)));
        let result = SimulationResult {
            world: WorldExtents::default(),
            dt: 0.1,
            agents: vec![AgentTrack {
                agent_id: 0,
                spawner_id: "s".into(),
                goal_id: "g".into(),
                goal: Vec2::new(25.0, 25.0),
                arrived_step: None,
                trajectory: vec![Vec2::new(10.05, 20.05), Vec2::new(20.05, 20.05)],
            }],
            simulation_time_s: 0.0,
            steps_executed: 1,
            all_arrived: false,
        };
        let img = render_trajectory_plot(&scene, &result, 10.0);
        assert_eq!((img.width(), img.height()), (300, 300));
        // Obstacle center (5,5) -> pixel (50, 249).
        assert_eq!(img.get(50, 249), OBSTACLE);
        assert_eq!(img.get(250, 49), GOAL);
        assert_eq!(img.get(150, 99), TRACK);
        assert_eq!(img.get(0, 0), BACKGROUND);
    }
}
