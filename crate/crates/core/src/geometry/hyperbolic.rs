//! Closed-form formulas for the upper half-plane.
//!
//! Geodesics are handled through a rotation about `i` conjugated by the
//! affine map `z -> x + y z`, which keeps every formula well conditioned
//! even for nearly vertical geodesics (huge circles).

use super::Point;

/// Hyperbolic distance.
pub fn dist(p: Point, q: Point) -> f64 {
    2.0 * (p.dist(q) / (2.0 * (p.y * q.y).sqrt())).asinh()
}

/// Model-coordinate angle of the unit tangent at `a` of the geodesic towards `b`.
pub fn direction_angle(a: Point, b: Point) -> f64 {
    // w = (b - a.x) / a.y, then the Cayley map sends i to 0 and geodesics
    // through i to diameters; its derivative at i rotates by -PI/2.
    let wx = (b.x - a.x) / a.y;
    let wy = b.y / a.y;
    // (w - i) / (w + i)
    let (nx, ny) = (wx, wy - 1.0);
    let (dx, dy) = (wx, wy + 1.0);
    let re = nx * dx + ny * dy;
    let im = ny * dx - nx * dy;
    im.atan2(re) + std::f64::consts::FRAC_PI_2
}

fn rotation(theta: f64, z: (f64, f64)) -> (f64, f64) {
    let (c, s) = (theta.cos(), theta.sin());
    // (c z + s) / (-s z + c)
    let num = (c * z.0 + s, c * z.1);
    let den = (-s * z.0 + c, -s * z.1);
    let d2 = den.0 * den.0 + den.1 * den.1;
    (
        (num.0 * den.0 + num.1 * den.1) / d2,
        (num.1 * den.0 - num.0 * den.1) / d2,
    )
}

/// Point at hyperbolic distance `s` from `a` along the geodesic leaving `a`
/// with model angle `phi`.
pub fn exp_point(a: Point, phi: f64, s: f64) -> Point {
    let theta = (phi - std::f64::consts::FRAC_PI_2) / 2.0;
    let w = rotation(theta, (0.0, s.exp()));
    Point::new(a.x + a.y * w.0, a.y * w.1)
}

/// Model angle of the tangent at `exp_point(a, phi, s)`.
pub fn exp_tangent_angle(phi: f64, s: f64) -> f64 {
    let theta = (phi - std::f64::consts::FRAC_PI_2) / 2.0;
    let es = s.exp();
    // derivative of R_theta at i e^s is (cos t - sin t * i e^s)^-2
    let den_arg = (-theta.sin() * es).atan2(theta.cos());
    std::f64::consts::FRAC_PI_2 - 2.0 * den_arg
}

/// Coefficients `(A, B, C)` of `A (x^2 + y^2) + B x + C = 0`, the generalized
/// circle carrying the geodesic through `a` and `b`, scaled to unit norm.
pub fn geodesic_coeffs(a: Point, b: Point) -> [f64; 3] {
    let na = a.x * a.x + a.y * a.y;
    let nb = b.x * b.x + b.y * b.y;
    let c = [a.x - b.x, nb - na, na * b.x - a.x * nb];
    let n = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
    [c[0] / n, c[1] / n, c[2] / n]
}

/// Value of the implicit geodesic equation at `p`.
pub fn implicit_value(g: &[f64; 3], p: Point) -> f64 {
    g[0] * (p.x * p.x + p.y * p.y) + g[1] * p.x + g[2]
}

/// Gradient of the implicit geodesic equation at `p` (normal to the geodesic).
pub fn implicit_gradient(g: &[f64; 3], p: Point) -> Point {
    Point::new(2.0 * g[0] * p.x + g[1], 2.0 * g[0] * p.y)
}

/// Intersection of two full geodesics inside the half-plane, if any.
pub fn geodesic_meet(g1: &[f64; 3], g2: &[f64; 3]) -> Option<Point> {
    let det = g1[0] * g2[1] - g2[0] * g1[1];
    if det.abs() < 1e-15 {
        return None;
    }
    let sq = (-g1[2] * g2[1] + g2[2] * g1[1]) / det;
    let x = (-g1[0] * g2[2] + g2[0] * g1[2]) / det;
    let y2 = sq - x * x;
    if y2 > 0.0 && y2.is_finite() {
        Some(Point::new(x, y2.sqrt()))
    } else {
        None
    }
}
