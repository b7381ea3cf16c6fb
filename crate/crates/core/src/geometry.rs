//! Planar vector math shared by every module.

use serde::{Deserialize, Serialize};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// A point or displacement on the ground plane, in meters.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn length(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn length_squared(self) -> f64 {
        self.dot(self)
    }

    pub fn distance(self, other: Vec2) -> f64 {
        (other - self).length()
    }

    /// Unit vector in the same direction, or zero for (near) zero input.
    pub fn normalized_or_zero(self) -> Vec2 {
        let len = self.length();
        if len < 1e-12 {
            Vec2::ZERO
        } else {
            self * (1.0 / len)
        }
    }

    /// Rotates counterclockwise by `degrees`.
    pub fn rotated(self, degrees: f64) -> Vec2 {
        let (sin, cos) = degrees.to_radians().sin_cos();
        Vec2::new(self.x * cos - self.y * sin, self.x * sin + self.y * cos)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl AddAssign for Vec2 {
    fn add_assign(&mut self, rhs: Vec2) {
        self.x += rhs.x;
        self.y += rhs.y;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x * rhs, self.y * rhs)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// A rectangle given by center, size and counterclockwise rotation.
///
/// Containment is evaluated by rotating the query point into the
/// rectangle's local frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrientedRect {
    pub center: Vec2,
    pub half_width: f64,
    pub half_height: f64,
    pub rotation_deg: f64,
}

impl OrientedRect {
    pub fn new(center: Vec2, width: f64, height: f64, rotation_deg: f64) -> Self {
        Self {
            center,
            half_width: width / 2.0,
            half_height: height / 2.0,
            rotation_deg,
        }
    }

    /// Same rectangle grown by `margin` on every side.
    pub fn inflated(&self, margin: f64) -> Self {
        Self {
            half_width: self.half_width + margin,
            half_height: self.half_height + margin,
            ..*self
        }
    }

    pub fn to_local(&self, p: Vec2) -> Vec2 {
        (p - self.center).rotated(-self.rotation_deg)
    }

    /// Closed containment (boundary counts as inside).
    pub fn contains(&self, p: Vec2) -> bool {
        let local = self.to_local(p);
        local.x.abs() <= self.half_width && local.y.abs() <= self.half_height
    }

    /// How far `p` lies inside the rectangle; zero or negative when outside.
    pub fn penetration_depth(&self, p: Vec2) -> f64 {
        let local = self.to_local(p);
        (self.half_width - local.x.abs()).min(self.half_height - local.y.abs())
    }

    /// Smallest `t` in [0, 1] at which `a + t·(b − a)` touches the closed
    /// rectangle, or `None` if the segment misses it.
    pub fn segment_entry(&self, a: Vec2, b: Vec2) -> Option<f64> {
        let p = self.to_local(a);
        let d = self.to_local(b) - p;
        let (mut t0, mut t1) = (0.0f64, 1.0f64);
        for (start, delta, half) in [(p.x, d.x, self.half_width), (p.y, d.y, self.half_height)] {
            if delta == 0.0 {
                if start.abs() > half {
                    return None;
                }
                continue;
            }
            let ta = (-half - start) / delta;
            let tb = (half - start) / delta;
            let (lo, hi) = if ta <= tb { (ta, tb) } else { (tb, ta) };
            t0 = t0.max(lo);
            t1 = t1.min(hi);
            if t0 > t1 {
                return None;
            }
        }
        Some(t0)
    }

    pub fn corners(&self) -> [Vec2; 4] {
        let (hw, hh) = (self.half_width, self.half_height);
        [
            Vec2::new(-hw, -hh),
            Vec2::new(hw, -hh),
            Vec2::new(hw, hh),
            Vec2::new(-hw, hh),
        ]
        .map(|c| self.center + c.rotated(self.rotation_deg))
    }

    /// Axis-aligned bounds as (min, max).
    pub fn bounds(&self) -> (Vec2, Vec2) {
        let corners = self.corners();
        let mut min = corners[0];
        let mut max = corners[0];
        for c in &corners[1..] {
            min.x = min.x.min(c.x);
            min.y = min.y.min(c.y);
            max.x = max.x.max(c.x);
            max.y = max.y.max(c.y);
        }
        (min, max)
    }
}
