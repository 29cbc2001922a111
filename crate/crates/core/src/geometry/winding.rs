//! Crossing signs, turning numbers and the classical Whitney count for
//! closed planar polylines.

use std::f64::consts::TAU;

use super::{arc_intersection, Arc, Direction, Kernel, Point};
use crate::curve::{GenericityReport, ViolationKind};
use crate::error::{Error, Result};
use crate::tolerance::{Tolerance, MIN_TURN_GAP};

/// Sign of a double point from the tangents of its two passes.
///
/// Returns the sign of `det [v_late; v_early]`: `+1` exactly when the later
/// pass crosses the earlier one from its left to its right. With this
/// convention a small counterclockwise kink contributes `+1`.
pub fn crossing_sign(v_early: Direction, v_late: Direction, eps: f64) -> Result<i32> {
    let det = v_late.cross(v_early);
    if det.abs() < eps {
        return Err(Error::Parallel);
    }
    Ok(if det > 0.0 { 1 } else { -1 })
}

/// Degree of a closed cycle of directions: the sum of the signed exterior
/// angles divided by `2π`.
pub fn turning_degree(dirs: &[Direction], eps: f64) -> Result<i64> {
    if dirs.is_empty() {
        return Ok(0);
    }
    let mut total = 0.0;
    for (i, d) in dirs.iter().enumerate() {
        let next = dirs[(i + 1) % dirs.len()];
        if d.cross(next).abs() < eps && d.dot(next) < 0.0 {
            return Err(Error::CuspTurn);
        }
        total += d.turn_to(next);
    }
    Ok((total / TAU).round() as i64)
}

/// A self-crossing of a closed planar polyline, indexed in traversal order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlanarCrossing {
    pub point: Point,
    /// Earlier segment and its parameter.
    pub first: (usize, f64),
    /// Later segment and its parameter.
    pub second: (usize, f64),
    pub sign: i32,
}

fn segment_dirs(points: &[Point]) -> Result<Vec<Direction>> {
    let n = points.len();
    (0..n)
        .map(|i| {
            let d = points[(i + 1) % n] - points[i];
            Direction::new(d.x, d.y)
                .ok_or_else(|| Error::MalformedCurve(format!("repeated vertex {i}")))
        })
        .collect()
}

/// All self-crossings of the closed polyline `points[0] -> ... -> points[0]`.
///
/// Fails with `NonGeneric` on tangencies, vertex contacts, cusps, or
/// crossings closer than the tolerance margin.
pub fn planar_crossings(points: &[Point], tol: &Tolerance) -> Result<Vec<PlanarCrossing>> {
    let n = points.len();
    if n < 3 {
        return Err(Error::MalformedCurve(
            "closed polyline needs at least 3 vertices".into(),
        ));
    }
    let dirs = segment_dirs(points)?;
    let mut report = GenericityReport::default();
    for i in 0..n {
        if dirs[i].turn_to(dirs[(i + 1) % n]).abs() >= std::f64::consts::PI - MIN_TURN_GAP {
            report.push(
                ViolationKind::Tangency,
                points[(i + 1) % n],
                format!("cusp at vertex {}", (i + 1) % n),
            );
        }
    }
    let arcs: Vec<Arc> = (0..n)
        .map(|i| Arc::new(Kernel::Euclid, points[i], points[(i + 1) % n]))
        .collect::<Result<_>>()?;
    let margin = tol.margin();
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 2)..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let hit = arc_intersection(&arcs[i], &arcs[j], margin)?;
            for d in &hit.degeneracies {
                let kind = match d.kind {
                    crate::geometry::DegeneracyKind::Tangency => ViolationKind::Tangency,
                    crate::geometry::DegeneracyKind::EndpointTouch => {
                        ViolationKind::VertexIncidence
                    }
                };
                report.push(kind, d.point, format!("segments {i} and {j}"));
            }
            for c in hit.crossings {
                let sign = crossing_sign(dirs[i], dirs[j], tol.eps)?;
                out.push(PlanarCrossing {
                    point: c.point,
                    first: (i, c.u),
                    second: (j, c.v),
                    sign,
                });
            }
        }
    }
    for (a, ca) in out.iter().enumerate() {
        for cb in &out[a + 1..] {
            if ca.point.dist(cb.point) < margin {
                report.push(
                    ViolationKind::TriplePoint,
                    ca.point,
                    "coincident crossings".into(),
                );
            }
        }
    }
    if !report.ok {
        return Err(Error::NonGeneric(Box::new(report)));
    }
    Ok(out)
}

/// Whitney's count: the sum of the crossing signs taken in traversal order
/// from an outer base point, plus `+1`/`-1` for a counterclockwise/clockwise
/// turn at that base point.
///
/// The base point is the lowest vertex (smallest `y`, then smallest `x`),
/// which always lies on the boundary of the unbounded complementary region.
pub fn whitney_base_sum(points: &[Point], tol: &Tolerance) -> Result<i64> {
    let n = points.len();
    if n < 3 {
        return Err(Error::MalformedCurve(
            "closed polyline needs at least 3 vertices".into(),
        ));
    }
    let base = (0..n)
        .min_by(|&i, &j| {
            (points[i].y, points[i].x)
                .partial_cmp(&(points[j].y, points[j].x))
                .expect("finite coordinates")
        })
        .expect("non-empty");
    let rotated: Vec<Point> = (0..n).map(|k| points[(base + k) % n]).collect();
    let incoming = rotated[0] - rotated[n - 1];
    let outgoing = rotated[1] - rotated[0];
    let mu = if incoming.cross(outgoing) > 0.0 {
        1
    } else {
        -1
    };
    let crossings = planar_crossings(&rotated, tol)?;
    Ok(mu + crossings.iter().map(|c| c.sign as i64).sum::<i64>())
}

/// Segment directions of a closed polyline, for `turning_degree`.
pub fn closed_polyline_dirs(points: &[Point]) -> Result<Vec<Direction>> {
    segment_dirs(points)
}
