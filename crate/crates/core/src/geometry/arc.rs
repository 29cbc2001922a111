use serde::{Deserialize, Serialize};

use super::{hyperbolic as hyp, Aabb, Direction, Kernel, Point};
use crate::error::{Error, Result};
use crate::tolerance::MIN_CROSSING_SIN;

/// A geodesic arc from `a` to `b` in one of the model kernels.
///
/// Arc parameters are proportional to kernel arclength, so a deck
/// transformation (an isometry) maps the point at parameter `u` of an arc
/// to the point at parameter `u` of the image arc.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Arc {
    kernel: Kernel,
    a: Point,
    b: Point,
    len: f64,
    // initial model angle of the tangent (hyperbolic only)
    phi: f64,
}

impl Arc {
    pub fn new(kernel: Kernel, a: Point, b: Point) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::MalformedCurve("non-finite arc endpoint".into()));
        }
        if a == b {
            return Err(Error::MalformedCurve("arc endpoints coincide".into()));
        }
        match kernel {
            Kernel::Euclid => Ok(Arc {
                kernel,
                a,
                b,
                len: a.dist(b),
                phi: 0.0,
            }),
            Kernel::Hyperbolic => {
                if a.y <= 0.0 || b.y <= 0.0 {
                    return Err(Error::MalformedCurve("hyperbolic point with y <= 0".into()));
                }
                Ok(Arc {
                    kernel,
                    a,
                    b,
                    len: hyp::dist(a, b),
                    phi: hyp::direction_angle(a, b),
                })
            }
        }
    }

    pub fn kernel(&self) -> Kernel {
        self.kernel
    }

    pub fn a(&self) -> Point {
        self.a
    }

    pub fn b(&self) -> Point {
        self.b
    }

    /// Length in the kernel metric.
    pub fn length(&self) -> f64 {
        self.len
    }

    pub fn point_at(&self, u: f64) -> Point {
        self.point_at_length(u * self.len)
    }

    /// Point at kernel arclength `s` from `a` (extrapolates along the geodesic).
    pub fn point_at_length(&self, s: f64) -> Point {
        match self.kernel {
            Kernel::Euclid => self.a + (self.b - self.a) * (s / self.len),
            Kernel::Hyperbolic => {
                if s == self.len {
                    self.b
                } else {
                    hyp::exp_point(self.a, self.phi, s)
                }
            }
        }
    }

    pub fn tangent_at(&self, u: f64) -> Direction {
        match self.kernel {
            Kernel::Euclid => Direction::new(self.b.x - self.a.x, self.b.y - self.a.y)
                .expect("non-degenerate arc"),
            Kernel::Hyperbolic => {
                Direction::from_angle(hyp::exp_tangent_angle(self.phi, u * self.len))
            }
        }
    }

    /// Parameter of a point assumed to lie on the supporting geodesic.
    pub fn param_of(&self, p: Point) -> f64 {
        match self.kernel {
            Kernel::Euclid => {
                let r = self.b - self.a;
                (p - self.a).dot(r) / r.dot(r)
            }
            Kernel::Hyperbolic => {
                let da = hyp::dist(self.a, p);
                let db = hyp::dist(p, self.b);
                if db > self.len && db > da {
                    -da / self.len
                } else {
                    da / self.len
                }
            }
        }
    }

    pub fn bbox(&self) -> Aabb {
        let mut bb = Aabb::from_point(self.a);
        bb.include(self.b);
        if self.kernel == Kernel::Hyperbolic {
            let g = self.coeffs();
            if g[0].abs() > 1e-300 {
                let c = -g[1] / (2.0 * g[0]);
                if c > bb.min.x && c < bb.max.x {
                    let r2 = c * c - g[2] / g[0];
                    bb.include(Point::new(c, r2.max(0.0).sqrt()));
                }
            }
        }
        bb
    }

    /// Implicit geodesic coefficients (hyperbolic only).
    fn coeffs(&self) -> [f64; 3] {
        hyp::geodesic_coeffs(self.a, self.b)
    }

    /// Model-coordinate distance from `p` to the arc.
    pub fn distance_to(&self, p: Point) -> f64 {
        let ends = p.dist(self.a).min(p.dist(self.b));
        let foot = match self.kernel {
            Kernel::Euclid => {
                let u = self.param_of(p);
                if !(0.0..=1.0).contains(&u) {
                    return ends;
                }
                return p.dist(self.point_at(u));
            }
            Kernel::Hyperbolic => {
                let g = self.coeffs();
                let grad = hyp::implicit_gradient(&g, p);
                let gn = grad.norm();
                if g[0].abs() * p.norm().max(1.0) < 1e-12 * gn {
                    // vertical line through a
                    Point::new(self.a.x, p.y)
                } else {
                    let c = Point::new(-g[1] / (2.0 * g[0]), 0.0);
                    let r = (c.x * c.x - g[2] / g[0]).max(0.0).sqrt();
                    let v = p - c;
                    let vn = v.norm();
                    if vn == 0.0 {
                        return ends;
                    }
                    let f = c + v * (r / vn);
                    if f.y <= 0.0 {
                        return ends;
                    }
                    f
                }
            }
        };
        let u = self.param_of(foot);
        if (0.0..=1.0).contains(&u) {
            p.dist(foot).min(ends)
        } else {
            ends
        }
    }
}

/// A transversal interior intersection of two arcs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Crossing {
    pub point: Point,
    /// Parameter along the first arc.
    pub u: f64,
    /// Parameter along the second arc.
    pub v: f64,
    /// `|sin|` of the crossing angle.
    pub sin_angle: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegeneracyKind {
    /// Overlap or a crossing/contact at a near-zero angle.
    Tangency,
    /// Contact at or within tolerance of an arc endpoint.
    EndpointTouch,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Degeneracy {
    pub kind: DegeneracyKind,
    pub point: Point,
}

/// Result of intersecting two arcs: transversal crossings plus degenerate contacts.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Intersections {
    pub crossings: Vec<Crossing>,
    pub degeneracies: Vec<Degeneracy>,
}

impl Intersections {
    pub fn is_clean(&self) -> bool {
        self.degeneracies.is_empty()
    }
}

/// Candidate meeting point of the two supporting geodesics.
struct Meet {
    point: Point,
    sin_angle: f64,
}

fn supporting_meet(a1: &Arc, a2: &Arc) -> Option<Meet> {
    match a1.kernel {
        Kernel::Euclid => {
            let r = a1.b - a1.a;
            let s = a2.b - a2.a;
            let denom = r.cross(s);
            if denom == 0.0 {
                return None;
            }
            let u = (a2.a - a1.a).cross(s) / denom;
            Some(Meet {
                point: a1.a + r * u,
                sin_angle: (denom / (r.norm() * s.norm())).abs(),
            })
        }
        Kernel::Hyperbolic => {
            let g1 = a1.coeffs();
            let g2 = a2.coeffs();
            let p = hyp::geodesic_meet(&g1, &g2)?;
            let n1 = hyp::implicit_gradient(&g1, p);
            let n2 = hyp::implicit_gradient(&g2, p);
            Some(Meet {
                point: p,
                sin_angle: (n1.cross(n2) / (n1.norm() * n2.norm())).abs(),
            })
        }
    }
}

/// Intersects two arcs of the same kernel.
///
/// Transversal crossings strictly inside both arcs (farther than `eps`, in
/// kernel distance, from every endpoint, crossing angle with `|sin| >= MIN_CROSSING_SIN`) are
/// returned as crossings. Contacts near endpoints and tangential contacts are
/// reported as degeneracies and never as crossings.
pub fn arc_intersection(a1: &Arc, a2: &Arc, eps: f64) -> Result<Intersections> {
    if a1.kernel != a2.kernel {
        return Err(Error::MixedKernels);
    }
    let mut out = Intersections::default();
    let meet = supporting_meet(a1, a2);
    let nearly_parallel = meet.as_ref().is_none_or(|m| m.sin_angle < MIN_CROSSING_SIN);

    if let Some(m) = &meet {
        let u = a1.param_of(m.point);
        let v = a2.param_of(m.point);
        let inside = (0.0..=1.0).contains(&u) && (0.0..=1.0).contains(&v);
        if inside {
            let near_end = [a1.a, a1.b, a2.a, a2.b]
                .iter()
                .any(|e| a1.kernel.dist(*e, m.point) < eps);
            if nearly_parallel {
                out.degeneracies.push(Degeneracy {
                    kind: DegeneracyKind::Tangency,
                    point: m.point,
                });
            } else if near_end {
                out.degeneracies.push(Degeneracy {
                    kind: DegeneracyKind::EndpointTouch,
                    point: m.point,
                });
            } else {
                out.crossings.push(Crossing {
                    point: m.point,
                    u,
                    v,
                    sin_angle: m.sin_angle,
                });
            }
        }
    }

    // Endpoint contacts that the supporting-line meet does not explain
    // (collinear overlaps, near misses).
    let kind = if nearly_parallel {
        DegeneracyKind::Tangency
    } else {
        DegeneracyKind::EndpointTouch
    };
    for (e, other) in [(a1.a, a2), (a1.b, a2), (a2.a, a1), (a2.b, a1)] {
        // model distances shrink by the height in the hyperbolic kernel
        if other.distance_to(e) < eps * a1.kernel.model_scale(e) {
            let dup = out
                .degeneracies
                .iter()
                .any(|d| a1.kernel.dist(d.point, e) < eps);
            if !dup {
                out.degeneracies.push(Degeneracy { kind, point: e });
            }
        }
    }
    if !out.degeneracies.is_empty() {
        out.crossings.clear();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(ax: f64, ay: f64, bx: f64, by: f64) -> Arc {
        Arc::new(Kernel::Euclid, Point::new(ax, ay), Point::new(bx, by)).unwrap()
    }

    fn h(ax: f64, ay: f64, bx: f64, by: f64) -> Arc {
        Arc::new(Kernel::Hyperbolic, Point::new(ax, ay), Point::new(bx, by)).unwrap()
    }

    #[test]
    fn axis_crossing() {
        let r = arc_intersection(&e(0.0, 0.0, 2.0, 0.0), &e(1.0, -1.0, 1.0, 1.0), 1e-9).unwrap();
        assert_eq!(r.crossings.len(), 1);
        let c = r.crossings[0];
        assert!(c.point.dist(Point::new(1.0, 0.0)) < 1e-15);
        assert!((c.u - 0.5).abs() < 1e-15 && (c.v - 0.5).abs() < 1e-15);
        assert!(r.is_clean());
    }

    #[test]
    fn disjoint_collinear() {
        let r = arc_intersection(&e(0.0, 0.0, 1.0, 0.0), &e(2.0, 0.0, 3.0, 0.0), 1e-9).unwrap();
        assert!(r.crossings.is_empty() && r.degeneracies.is_empty());
    }

    #[test]
    fn collinear_overlap_is_tangency() {
        let r = arc_intersection(&e(0.0, 0.0, 2.0, 0.0), &e(1.0, 0.0, 3.0, 0.0), 1e-9).unwrap();
        assert!(r.crossings.is_empty());
        assert!(r
            .degeneracies
            .iter()
            .all(|d| d.kind == DegeneracyKind::Tangency));
        assert!(!r.degeneracies.is_empty());
    }

    #[test]
    fn crossing_through_endpoint_is_touch() {
        let r = arc_intersection(&e(0.0, 0.0, 1.0, 0.0), &e(1.0, -1.0, 1.0, 1.0), 1e-9).unwrap();
        assert!(r.crossings.is_empty());
        assert_eq!(r.degeneracies[0].kind, DegeneracyKind::EndpointTouch);
    }

    #[test]
    fn hyperbolic_circle_vertical() {
        // semicircle |z - 1| = sqrt(2) against the vertical geodesic x = 1
        let sq2 = 2f64.sqrt();
        let t0 = 0.3f64;
        let t1 = 2.5f64;
        let arc = h(
            1.0 + sq2 * t1.cos(),
            sq2 * t1.sin(),
            1.0 + sq2 * t0.cos(),
            sq2 * t0.sin(),
        );
        let vert = h(1.0, 0.5, 1.0, 3.0);
        let r = arc_intersection(&arc, &vert, 1e-9).unwrap();
        assert_eq!(r.crossings.len(), 1);
        assert!(r.crossings[0].point.dist(Point::new(1.0, sq2)) < 1e-12);
        assert!((r.crossings[0].sin_angle - 1.0).abs() < 1e-12);
        // parameter consistency
        let c = r.crossings[0];
        assert!(arc.point_at(c.u).dist(c.point) < 1e-12);
        assert!(vert.point_at(c.v).dist(c.point) < 1e-12);
    }

    #[test]
    fn hyperbolic_point_at_stays_on_circle() {
        let arc = h(-1.0, 0.5, 2.0, 1.0);
        let g = hyp::geodesic_coeffs(arc.a(), arc.b());
        for i in 0..=10 {
            let p = arc.point_at(i as f64 / 10.0);
            assert!(hyp::implicit_value(&g, p).abs() < 1e-12);
            assert!((arc.param_of(p) - i as f64 / 10.0).abs() < 1e-9);
        }
        assert!(arc.point_at(1.0).dist(arc.b()) < 1e-15);
    }

    #[test]
    fn hyperbolic_bbox_contains_top() {
        let arc = h(-1.0, 0.1, 1.0, 0.1);
        let bb = arc.bbox();
        assert!((bb.max.y - (1.0f64 + 0.01).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn tangent_of_vertical_ray() {
        let t = h(1.0, 1.0, 1.0, 2.0).tangent_at(0.0);
        assert!(t.dx.abs() < 1e-15 && (t.dy - 1.0).abs() < 1e-15);
        let t = e(0.0, 0.0, 2.0, 0.0).tangent_at(0.5);
        assert_eq!((t.dx, t.dy), (1.0, 0.0));
        let t = e(0.0, 0.0, 0.0, 3.0).tangent_at(0.1);
        assert_eq!((t.dx, t.dy), (0.0, 1.0));
    }

    #[test]
    fn mixed_kernels_rejected() {
        assert!(matches!(
            arc_intersection(&e(0.0, 1.0, 1.0, 1.0), &h(0.0, 1.0, 1.0, 1.0), 1e-9),
            Err(Error::MixedKernels)
        ));
    }

    #[test]
    fn distance_to_circle_arc() {
        let arc = h(-1.0, 1e-3, 1.0, 1e-3);
        // top of the unit semicircle is (0, ~1)
        let d = arc.distance_to(Point::new(0.0, 1.5));
        assert!((d - 0.5).abs() < 1e-5);
    }
}
