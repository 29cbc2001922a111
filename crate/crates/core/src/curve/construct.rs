//! Representatives of free homotopy classes and local edits (kinks, perturbations).

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::generic::{double_points, EventKind};
use super::CurveOnSurface;
use crate::deck::{DeckElement, GroupKind};
use crate::error::{Error, Result};
use crate::geometry::{hyperbolic, Arc, Point};
use crate::tolerance::Tolerance;

/// Vertices per unit hyperbolic length on Sanov axes.
pub const DEFAULT_AXIS_SAMPLES: usize = 64;

/// Vertices per unit hyperbolic length on horocycles.
pub const DEFAULT_HOROCYCLE_SAMPLES: usize = 64;

/// The closed geodesic in the free homotopy class of `t0`, as a cover.
///
/// Euclidean groups: `samples` is the number of vertices on the invariant
/// line (torus `(0,0) -> (a,b)`; Klein glide axis `y = -n/2`; Klein
/// translation `(0,0) -> (m,n)`). Sanov: the axis of `t0`, starting at the top
/// of its semicircle, with `samples` vertices per unit length.
pub fn geodesic_representative(t0: &DeckElement, samples: usize) -> Result<CurveOnSurface> {
    if t0.is_identity() {
        return Err(Error::IdentityHolonomy);
    }
    let samples = samples.max(1);
    let (start, step) = match t0 {
        DeckElement::Torus { a, b } => (Point::new(0.0, 0.0), Point::new(*a as f64, *b as f64)),
        DeckElement::Klein { m, n } => {
            if m.rem_euclid(2) == 1 {
                (
                    Point::new(0.0, -(*n as f64) / 2.0),
                    Point::new(*m as f64, 0.0),
                )
            } else {
                (Point::new(0.0, 0.0), Point::new(*m as f64, *n as f64))
            }
        }
        DeckElement::Sanov(_) => return sanov_axis(t0, samples),
    };
    let vertices = (0..samples)
        .map(|k| start + step * (k as f64 / samples as f64))
        .collect();
    CurveOnSurface::new(t0.clone(), vertices)
}

fn sanov_axis(t0: &DeckElement, samples: usize) -> Result<CurveOnSurface> {
    if t0.is_parabolic() {
        return Err(Error::ParabolicHolonomy);
    }
    let DeckElement::Sanov(w) = t0 else {
        unreachable!()
    };
    let [a, b, c, d] = w.matrix().map(|x| x as f64);
    // a hyperbolic integer matrix of determinant one has c != 0
    let center = (a - d) / (2.0 * c);
    let radius = ((a - d) * (a - d) + 4.0 * b * c).sqrt() / (2.0 * c.abs());
    let z0 = Point::new(center, radius);
    let z1 = t0.apply_point(z0);
    let len = hyperbolic::dist(z0, z1);
    let phi = hyperbolic::direction_angle(z0, z1);
    let n = ((samples as f64 * len).ceil() as usize).max(1);
    let vertices = (0..n)
        .map(|k| hyperbolic::exp_point(z0, phi, len * k as f64 / n as f64))
        .collect();
    CurveOnSurface::new(t0.clone(), vertices)
}

/// A horocycle invariant under the parabolic `t0`, from `z` to `t0(z)`.
///
/// If `t0` fixes infinity this is the horizontal segment at `height`.
/// Otherwise `t0` is conjugated by `C(z) = -1/(z - ξ)` (`ξ` its fixed point)
/// to a translation, and the horizontal horocycle at `height` is mapped back.
/// `samples` counts vertices per unit hyperbolic length.
pub fn horocycle_representative(
    t0: &DeckElement,
    height: f64,
    samples: usize,
) -> Result<CurveOnSurface> {
    if !t0.is_parabolic() {
        return Err(Error::NotParabolic);
    }
    if !(height > 0.0 && height.is_finite()) {
        return Err(Error::MalformedCurve(
            "horocycle height must be positive".into(),
        ));
    }
    let DeckElement::Sanov(w) = t0 else {
        unreachable!()
    };
    let [a, b, c, d] = w.matrix();
    let trace_sign = (a + d).signum() as f64;
    // translation length after conjugation to a map fixing infinity
    let (tau, xi) = if c == 0 {
        (b as f64 * d as f64, None)
    } else {
        (
            -(c as f64) * trace_sign,
            Some((a - d) as f64 / (2.0 * c as f64)),
        )
    };
    let len = tau.abs() / height;
    let n = ((samples.max(1) as f64 * len).ceil() as usize).max(1);
    let vertices = (0..n)
        .map(|k| {
            let x = tau * k as f64 / n as f64;
            match xi {
                None => Point::new(x, height),
                Some(xi) => {
                    // ξ - 1/w for w = x + i height
                    let den = x * x + height * height;
                    Point::new(xi - x / den, height / den)
                }
            }
        })
        .collect();
    CurveOnSurface::new(t0.clone(), vertices)
}

/// Clearance around the point at curve parameter `at`, in kernel units:
/// the smaller of the distance to every other strand on the surface and the
/// distance to the ends of its own arc.
pub fn kink_clearance(c: &CurveOnSurface, at: f64, tol: &Tolerance) -> Result<f64> {
    let (_, seg, frac) = c.locate(at.rem_euclid(1.0));
    let arc = c.arcs()[seg];
    let p = arc.point_at(frac);
    let kernel = c.kernel();
    let scale = kernel.model_scale(p);
    let sp = frac * arc.length();
    let mut best = sp.min(arc.length() - sp) * scale;
    for t in c.search_set(tol) {
        for (j, a) in c.arcs().iter().enumerate() {
            if t.is_identity() && j == seg {
                continue;
            }
            let img = Arc::new(kernel, t.apply_point(a.a()), t.apply_point(a.b()))?;
            let bb = img.bbox();
            let dx = (bb.min.x - p.x).max(p.x - bb.max.x).max(0.0);
            let dy = (bb.min.y - p.y).max(p.y - bb.max.y).max(0.0);
            if dx.hypot(dy) >= best {
                continue;
            }
            best = best.min(img.distance_to(p));
        }
    }
    Ok(best / scale)
}

/// Inserts a small kink of the given orientation (`+1` counterclockwise)
/// at curve parameter `at`, with `radius` in kernel units.
///
/// The kink uses the local vertices `(1,0), (0,1), (0,-1), (2,0)` (times
/// `radius`, in the frame of the arc tangent and its normal), so the new
/// strand crosses the old one at the original point.
pub fn add_kink(
    c: &CurveOnSurface,
    at: f64,
    orientation: i32,
    radius: f64,
    tol: &Tolerance,
) -> Result<CurveOnSurface> {
    if orientation.abs() != 1 {
        return Err(Error::WrongCase(format!(
            "kink orientation must be +1 or -1, got {orientation}"
        )));
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::TooCrowded(format!(
            "kink radius {radius} must be positive"
        )));
    }
    let before = double_points(c, tol)?;
    let (_, seg, frac) = c.locate(at.rem_euclid(1.0));
    let arc = c.arcs()[seg];
    let sp = frac * arc.length();
    if sp < 2.0 * radius || arc.length() - sp < 3.0 * radius {
        return Err(Error::TooCrowded(format!(
            "kink at {at} does not fit in segment {seg}"
        )));
    }
    let p = arc.point_at(frac);
    let kernel = c.kernel();
    let set = c.search_set(tol);
    for e in &before {
        let q_s = c.arcs()[e.seg_s.0].point_at(e.seg_s.1);
        let d = c
            .surface_distance(p, e.location, &set)
            .min(c.surface_distance(p, q_s, &set));
        if d < 2.0 * radius {
            return Err(Error::TooCrowded(format!(
                "kink at {at} is within {d:e} of a double point"
            )));
        }
    }

    let phi = arc.tangent_at(frac).angle();
    let normal = phi + orientation as f64 * FRAC_PI_2;
    let kink = [
        arc.point_at_length(sp + radius),
        kernel.geodesic_point(p, normal, radius),
        kernel.geodesic_point(p, normal + PI, radius),
        arc.point_at_length(sp + 2.0 * radius),
    ];
    let mut vertices = c.vertices()[..=seg].to_vec();
    vertices.extend_from_slice(&kink);
    vertices.extend_from_slice(&c.vertices()[seg + 1..]);
    let out = CurveOnSurface::new(c.holonomy().clone(), vertices)?;

    let crowded = || Error::TooCrowded(format!("kink at {at} interacts with nearby strands"));
    let after = match double_points(&out, tol) {
        Ok(ev) => ev,
        Err(Error::NonGeneric(_)) => return Err(crowded()),
        Err(e) => return Err(e),
    };
    if after.len() != before.len() + 1 {
        return Err(crowded());
    }
    let match_tol = tol.margin();
    let mut used = vec![false; after.len()];
    for e in &before {
        let hit = after.iter().enumerate().find(|(k, f)| {
            !used[*k] && f.deck == e.deck && f.location.dist(e.location) < match_tol
        });
        match hit {
            Some((k, _)) => used[k] = true,
            None => return Err(crowded()),
        }
    }
    let new = &after[used.iter().position(|u| !u).expect("one new event")];
    if new.kind != EventKind::Dpm(0) || new.location.dist(p) > match_tol {
        return Err(crowded());
    }
    Ok(out)
}

/// Deterministic pseudo-random displacement of every lift vertex by at most
/// `magnitude` kernel units (`V_N` follows `V_0` through the holonomy).
///
/// The straight-line vertex interpolation from `c` to the result is sampled
/// and must stay regular with continuously varying turns, and the result must
/// be generic; otherwise `MarginExceeded`.
pub fn perturb(
    c: &CurveOnSurface,
    magnitude: f64,
    seed: u64,
    tol: &Tolerance,
) -> Result<CurveOnSurface> {
    if magnitude == 0.0 {
        return Ok(c.clone());
    }
    if !(magnitude > 0.0 && magnitude.is_finite()) {
        return Err(Error::MarginExceeded);
    }
    if c.group() == GroupKind::Sanov && magnitude >= 0.5 {
        return Err(Error::MarginExceeded);
    }
    let kernel = c.kernel();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shifts: Vec<Point> = c
        .vertices()
        .iter()
        .map(|&v| {
            let angle: f64 = rng.gen::<f64>() * TAU;
            let r: f64 = magnitude * rng.gen::<f64>() * kernel.model_scale(v);
            Point::new(r * angle.cos(), r * angle.sin())
        })
        .collect();
    let at = |tau: f64| -> Vec<Point> {
        c.vertices()
            .iter()
            .zip(&shifts)
            .map(|(&v, &d)| v + d * tau)
            .collect()
    };

    const STEPS: usize = 16;
    let mut prev = c.turns();
    for k in 1..=STEPS {
        let cur = CurveOnSurface::new(c.holonomy().clone(), at(k as f64 / STEPS as f64))
            .map_err(|_| Error::MarginExceeded)?;
        let turns = cur.turns();
        if turns.iter().zip(&prev).any(|(a, b)| (a - b).abs() > 0.5) {
            return Err(Error::MarginExceeded);
        }
        prev = turns;
    }
    let out =
        CurveOnSurface::new(c.holonomy().clone(), at(1.0)).map_err(|_| Error::MarginExceeded)?;
    match double_points(&out, tol) {
        Ok(_) => Ok(out),
        Err(Error::NonGeneric(_)) => Err(Error::MarginExceeded),
        Err(e) => Err(e),
    }
}
