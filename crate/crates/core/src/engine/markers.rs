//! Space markers: static point samples of walkable ground.

use super::SimulationConfig;
use crate::geometry::{OrientedRect, Vec2};
use crate::scene::{Scene, WorldExtents};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Marker positions plus a uniform bucket index for radius queries.
#[derive(Debug, Clone)]
pub struct MarkerField {
    positions: Vec<Vec2>,
    bucket_size: f64,
    bucket_cols: usize,
    bucket_rows: usize,
    /// CSR layout: markers of bucket `b` are `order[starts[b]..starts[b + 1]]`.
    starts: Vec<usize>,
    order: Vec<u32>,
}

impl MarkerField {
    /// Builds the bucket index with buckets of side `bucket_size`.
    pub fn new(positions: Vec<Vec2>, world: WorldExtents, bucket_size: f64) -> Self {
        let bucket_cols = ((world.width / bucket_size).ceil() as usize).max(1);
        let bucket_rows = ((world.height / bucket_size).ceil() as usize).max(1);
        let bucket_of = |p: Vec2| {
            let c = ((p.x / bucket_size).floor().max(0.0) as usize).min(bucket_cols - 1);
            let r = ((p.y / bucket_size).floor().max(0.0) as usize).min(bucket_rows - 1);
            r * bucket_cols + c
        };
        let mut counts = vec![0usize; bucket_cols * bucket_rows + 1];
        for &p in &positions {
            counts[bucket_of(p) + 1] += 1;
        }
        for i in 1..counts.len() {
            counts[i] += counts[i - 1];
        }
        let starts = counts.clone();
        let mut fill = counts;
        let mut order = vec![0u32; positions.len()];
        for (i, &p) in positions.iter().enumerate() {
            let b = bucket_of(p);
            order[fill[b]] = i as u32;
            fill[b] += 1;
        }
        Self {
            positions,
            bucket_size,
            bucket_cols,
            bucket_rows,
            starts,
            order,
        }
    }

    pub fn positions(&self) -> &[Vec2] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Calls `visit(index, distance)` for every marker within `radius` of `center`.
    pub fn for_each_within(&self, center: Vec2, radius: f64, mut visit: impl FnMut(u32, f64)) {
        let span = |v: f64, n: usize| {
            let lo = ((v - radius) / self.bucket_size).floor().max(0.0) as usize;
            let hi = (((v + radius) / self.bucket_size).floor().max(0.0) as usize).min(n - 1);
            (lo.min(n - 1), hi)
        };
        let (c0, c1) = span(center.x, self.bucket_cols);
        let (r0, r1) = span(center.y, self.bucket_rows);
        for r in r0..=r1 {
            for c in c0..=c1 {
                let b = r * self.bucket_cols + c;
                for &m in &self.order[self.starts[b]..self.starts[b + 1]] {
                    let d = center.distance(self.positions[m as usize]);
                    if d <= radius {
                        visit(m, d);
                    }
                }
            }
        }
    }
}

/// Jitter-cell layout: `cols × rows` cells of area exactly `1/ρ` when
/// `ρ·W·H` factors into a near-square grid, otherwise cells of side ≈ `1/√ρ`.
pub fn jitter_layout(world: WorldExtents, density: f64) -> (usize, usize) {
    let fallback = (
        ((world.width * density.sqrt()).round() as usize).max(1),
        ((world.height * density.sqrt()).round() as usize).max(1),
    );
    let total = (density * world.area()).round();
    if !(1.0..=1e9).contains(&total) {
        return fallback;
    }
    let total = total as usize;
    let mut best: Option<(f64, usize)> = None;
    let mut d = 1;
    while d * d <= total {
        if total.is_multiple_of(d) {
            for cols in [d, total / d] {
                let rows = total / cols;
                let aspect = (world.width / cols as f64) / (world.height / rows as f64);
                let score = aspect.ln().abs();
                if best.is_none_or(|(s, c)| score < s || (score == s && cols < c)) {
                    best = Some((score, cols));
                }
            }
        }
        d += 1;
    }
    match best {
        Some((score, cols)) if score <= std::f64::consts::LN_2 => (cols, total / cols),
        _ => fallback,
    }
}

/// Jittered-grid sampling: one uniformly placed candidate per cell, dropping
/// candidates that fall inside (or on the boundary of) an obstacle.
pub fn scatter_markers(scene: &Scene, config: &SimulationConfig) -> MarkerField {
    let mut rng = super::rng_stream(config.seed, super::MARKER_STREAM);
    let positions = sample_positions(scene, config.marker_density, &mut rng);
    MarkerField::new(positions, scene.world, config.perception_radius)
}

fn sample_positions(scene: &Scene, density: f64, rng: &mut ChaCha8Rng) -> Vec<Vec2> {
    let world = scene.world;
    let (cols, rows) = jitter_layout(world, density);
    let cw = world.width / cols as f64;
    let ch = world.height / rows as f64;
    let obstacles: Vec<OrientedRect> = scene.obstacles.iter().map(|o| o.rect()).collect();
    let mut out = Vec::with_capacity(cols * rows);
    for r in 0..rows {
        for c in 0..cols {
            let u: f64 = rng.random();
            let v: f64 = rng.random();
            let p = Vec2::new((c as f64 + u) * cw, (r as f64 + v) * ch);
            if !obstacles.iter().any(|o| o.contains(p)) {
                out.push(p);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scene::ObstacleRect;

    #[test]
    fn default_world_exact_count() {
        let field = scatter_markers(&Scene::default(), &SimulationConfig::default());
        assert_eq!(field.len(), 7200);
        let (cols, rows) = jitter_layout(WorldExtents::default(), 8.0);
        assert_eq!(cols * rows, 7200);
    }

    #[test]
    fn fully_covered_world_has_no_markers() {
        let mut s = Scene::new(WorldExtents {
            width: 10.0,
            height: 10.0,
        });
        s.obstacles
            .push(ObstacleRect::new("o", Vec2::new(5.0, 5.0), 10.0, 10.0));
        assert!(scatter_markers(&s, &SimulationConfig::default()).is_empty());
    }

    #[test]
    fn deterministic_per_seed() {
        let cfg = SimulationConfig::default().with_seed(11);
        let a = scatter_markers(&Scene::default(), &cfg);
        let b = scatter_markers(&Scene::default(), &cfg);
        assert_eq!(a.positions(), b.positions());
        let c = scatter_markers(&Scene::default(), &cfg.clone().with_seed(12));
        assert_ne!(a.positions(), c.positions());
    }

    #[test]
    fn count_within_five_percent_of_free_area() {
        let mut s = Scene::default();
        s.obstacles
            .push(ObstacleRect::new("a", Vec2::new(10.0, 10.0), 6.0, 2.0));
        s.obstacles
            .push(ObstacleRect::new("b", Vec2::new(20.0, 20.0), 8.0, 4.0).with_rotation(30.0));
        let free = s.world.area() - 12.0 - 32.0;
        let n = scatter_markers(&s, &SimulationConfig::default()).len() as f64;
        assert!((n - 8.0 * free).abs() <= 0.05 * 8.0 * free, "{n}");
        for (w, h, rho) in [(13.0, 7.0, 8.0), (30.0, 30.0, 5.5), (17.3, 29.1, 3.0)] {
            let world = WorldExtents {
                width: w,
                height: h,
            };
            let (c, r) = jitter_layout(world, rho);
            let expected = rho * w * h;
            assert!(
                ((c * r) as f64 - expected).abs() <= 0.05 * expected,
                "{w}x{h}@{rho}"
            );
        }
    }

    #[test]
    fn radius_query_matches_scan() {
        let field = scatter_markers(&Scene::default(), &SimulationConfig::default());
        for center in [
            Vec2::new(0.2, 0.3),
            Vec2::new(15.0, 15.0),
            Vec2::new(29.9, 12.0),
        ] {
            let mut hits = Vec::new();
            field.for_each_within(center, 1.0, |m, _| hits.push(m));
            hits.sort_unstable();
            let scan: Vec<u32> = (0..field.len() as u32)
                .filter(|&m| center.distance(field.positions()[m as usize]) <= 1.0)
                .collect();
            assert_eq!(hits, scan);
        }
    }
}
