//! Planar primitives for the two model geometries.
//!
//! Both kernels work in model coordinates: the Euclidean plane, and the
//! upper half-plane `y > 0` with its hyperbolic metric. Geodesic arcs are
//! straight segments in the first case, and vertical segments or arcs of
//! circles centred on the real axis in the second. The half-plane model is
//! conformal, so angle signs measured in model coordinates are intrinsic.

pub mod arc;
pub mod hyperbolic;
pub mod winding;

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

pub use arc::{arc_intersection, Arc, Crossing, Degeneracy, DegeneracyKind, Intersections};
pub use winding::{
    crossing_sign, planar_crossings, turning_degree, whitney_base_sum, PlanarCrossing,
};

/// Which model plane a curve lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kernel {
    Euclid,
    Hyperbolic,
}

/// A point (or free vector) in model coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3d cross product.
    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Counterclockwise quarter turn.
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// A unit tangent vector.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Direction {
    pub dx: f64,
    pub dy: f64,
}

impl Direction {
    /// Normalizes `(dx, dy)`; `None` for a zero or non-finite vector.
    pub fn new(dx: f64, dy: f64) -> Option<Self> {
        let n = dx.hypot(dy);
        if n > 0.0 && n.is_finite() {
            Some(Direction {
                dx: dx / n,
                dy: dy / n,
            })
        } else {
            None
        }
    }

    pub fn from_angle(theta: f64) -> Self {
        Direction {
            dx: theta.cos(),
            dy: theta.sin(),
        }
    }

    pub fn angle(self) -> f64 {
        self.dy.atan2(self.dx)
    }

    pub fn as_point(self) -> Point {
        Point::new(self.dx, self.dy)
    }

    pub fn cross(self, o: Direction) -> f64 {
        self.dx * o.dy - self.dy * o.dx
    }

    pub fn dot(self, o: Direction) -> f64 {
        self.dx * o.dx + self.dy * o.dy
    }

    /// Signed angle in `(-PI, PI]` turning `self` into `next`.
    pub fn turn_to(self, next: Direction) -> f64 {
        self.cross(next).atan2(self.dot(next))
    }

    pub fn reversed(self) -> Direction {
        Direction {
            dx: -self.dx,
            dy: -self.dy,
        }
    }
}

/// Axis-aligned bounding box.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Aabb {
    pub min: Point,
    pub max: Point,
}

impl Aabb {
    pub fn new(x0: f64, y0: f64, x1: f64, y1: f64) -> Self {
        Aabb {
            min: Point::new(x0.min(x1), y0.min(y1)),
            max: Point::new(x0.max(x1), y0.max(y1)),
        }
    }

    pub fn from_point(p: Point) -> Self {
        Aabb { min: p, max: p }
    }

    pub fn include(&mut self, p: Point) {
        self.min.x = self.min.x.min(p.x);
        self.min.y = self.min.y.min(p.y);
        self.max.x = self.max.x.max(p.x);
        self.max.y = self.max.y.max(p.y);
    }

    pub fn union(mut self, o: &Aabb) -> Self {
        self.include(o.min);
        self.include(o.max);
        self
    }

    pub fn padded(self, pad: f64) -> Self {
        Aabb {
            min: Point::new(self.min.x - pad, self.min.y - pad),
            max: Point::new(self.max.x + pad, self.max.y + pad),
        }
    }

    pub fn overlaps(&self, o: &Aabb) -> bool {
        self.min.x <= o.max.x
            && o.min.x <= self.max.x
            && self.min.y <= o.max.y
            && o.min.y <= self.max.y
    }

    pub fn corners(&self) -> [Point; 4] {
        [
            self.min,
            Point::new(self.max.x, self.min.y),
            self.max,
            Point::new(self.min.x, self.max.y),
        ]
    }

    pub fn center(&self) -> Point {
        (self.min + self.max) * 0.5
    }
}

impl Kernel {
    /// Distance in the kernel metric.
    pub fn dist(self, p: Point, q: Point) -> f64 {
        match self {
            Kernel::Euclid => p.dist(q),
            Kernel::Hyperbolic => hyperbolic::dist(p, q),
        }
    }

    /// Point at kernel distance `s` from `p` along the geodesic leaving `p`
    /// with model angle `angle`.
    pub fn geodesic_point(self, p: Point, angle: f64, s: f64) -> Point {
        match self {
            Kernel::Euclid => p + Direction::from_angle(angle).as_point() * s,
            Kernel::Hyperbolic => hyperbolic::exp_point(p, angle, s),
        }
    }

    /// Ratio of model length to kernel length near `p`.
    pub fn model_scale(self, p: Point) -> f64 {
        match self {
            Kernel::Euclid => 1.0,
            Kernel::Hyperbolic => p.y,
        }
    }
}
