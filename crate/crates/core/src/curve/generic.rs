//! Genericity checks and double-point detection.

use rayon::prelude::*;
use serde::Serialize;

use super::CurveOnSurface;
use crate::deck::{cyclic_power, DeckElement};
use crate::error::{Error, Result};
use crate::geometry::{arc_intersection, crossing_sign, Aabb, Arc, DegeneracyKind, Point};
use crate::tolerance::Tolerance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Tangency,
    TriplePoint,
    VertexIncidence,
    MarginBreach,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub location: Point,
    pub detail: String,
}

/// Outcome of a genericity check; `ok` iff there are no violations.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GenericityReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl Default for GenericityReport {
    fn default() -> Self {
        GenericityReport {
            ok: true,
            violations: Vec::new(),
        }
    }
}

impl GenericityReport {
    pub fn push(&mut self, kind: ViolationKind, location: Point, detail: String) {
        self.ok = false;
        self.violations.push(Violation {
            kind,
            location,
            detail,
        });
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ContactKind {
    Crossing { sin_angle: f64 },
    Tangency,
    EndpointTouch,
}

/// A meeting of window arc `a.0` (at arc parameter `a.1`) with arc `b.0` of
/// the translate `deck · window` (at parameter `b.1`), located at `point`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Contact {
    pub a: (usize, f64),
    pub b: (usize, f64),
    pub deck: DeckElement,
    pub point: Point,
    pub kind: ContactKind,
}

/// `D0`, or `Dpm(j)` when the relating deck element is `T0^j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum EventKind {
    D0,
    Dpm(i64),
}

impl EventKind {
    pub fn is_dpm(self) -> bool {
        matches!(self, EventKind::Dpm(_))
    }
}

/// A double point of the curve on the surface, seen from the chosen cover:
/// `γ̃(t) = deck · γ̃(s)` with `0 <= s < t < 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DoublePointEvent {
    pub s: f64,
    pub t: f64,
    pub deck: DeckElement,
    /// `γ̃(t)` in cover coordinates.
    pub location: Point,
    pub kind: EventKind,
    /// Arc index and arc parameter of `s`.
    pub seg_s: (usize, f64),
    /// Arc index and arc parameter of `t`.
    pub seg_t: (usize, f64),
    pub sin_angle: f64,
}

impl DoublePointEvent {
    /// Whether one of the two loops at this double point is null-homotopic,
    /// i.e. `deck` is the identity or `T0`.
    ///
    /// This agrees with `kind` being `Dpm(0)` or `Dpm(1)`; events of kind
    /// `Dpm(j)` with `j` outside `{0, 1}` are exactly the disagreements.
    pub fn has_null_loop(&self, t0: &DeckElement) -> bool {
        self.deck.is_identity() || &self.deck == t0
    }
}

/// Classification of a deck element relative to the holonomy.
pub fn classify_deck(deck: &DeckElement, t0: &DeckElement) -> EventKind {
    if t0.is_identity() {
        return if deck.is_identity() {
            EventKind::Dpm(0)
        } else {
            EventKind::D0
        };
    }
    match cyclic_power(deck, t0) {
        Ok(Some(j)) => EventKind::Dpm(j),
        _ => EventKind::D0,
    }
}

/// `Dpm(j)` iff the event's deck element is `T0^j`.
pub fn classify(c: &CurveOnSurface, e: &DoublePointEvent) -> EventKind {
    classify_deck(&e.deck, c.holonomy())
}

/// Loop classes at a double point: `g1 = T` for `γ|[s,t]`, `g2 = T0 T^-1` for
/// `γ|[t,s+1]` (so `g2 g1 = T0`), and whether `γ|[s,t]` comes back to the
/// double point from the left of the branch leaving it at `s`.
pub fn loop_classes_at(
    c: &CurveOnSurface,
    e: &DoublePointEvent,
    tol: &Tolerance,
) -> Result<(DeckElement, DeckElement, bool)> {
    let g1 = e.deck.clone();
    let g2 = c.holonomy().compose(&g1.inverse())?;
    let arc_s = &c.arcs()[e.seg_s.0];
    let out_s = e
        .deck
        .apply_vector(arc_s.point_at(e.seg_s.1), arc_s.tangent_at(e.seg_s.1));
    let back = c.arcs()[e.seg_t.0].tangent_at(e.seg_t.1);
    let left_first = crossing_sign(out_s, back, tol.eps)? == 1;
    Ok((g1, g2, left_first))
}

/// Pairs `(i, j)` with `a[i]` overlapping `b[j]`, by a sweep over `x`.
fn candidate_pairs(a: &[Aabb], b: &[Aabb]) -> Vec<(usize, usize)> {
    let mut order: Vec<(f64, bool, usize)> = a
        .iter()
        .enumerate()
        .map(|(i, bx)| (bx.min.x, false, i))
        .chain(b.iter().enumerate().map(|(j, bx)| (bx.min.x, true, j)))
        .collect();
    order.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut active_a: Vec<usize> = Vec::new();
    let mut active_b: Vec<usize> = Vec::new();
    let mut out = Vec::new();
    for (x, from_b, k) in order {
        if from_b {
            active_a.retain(|&i| a[i].max.x >= x);
            for &i in &active_a {
                if a[i].overlaps(&b[k]) {
                    out.push((i, k));
                }
            }
            active_b.push(k);
        } else {
            active_b.retain(|&j| b[j].max.x >= x);
            for &j in &active_b {
                if a[k].overlaps(&b[j]) {
                    out.push((k, j));
                }
            }
            active_a.push(k);
        }
    }
    out
}

fn adjacent(c: &CurveOnSurface, t: &DeckElement, t0_inv: &DeckElement, i: usize, j: usize) -> bool {
    let n = c.len();
    (t.is_identity() && (i == j || i.abs_diff(j) == 1))
        || (t == c.holonomy() && i == n - 1 && j == 0)
        || (t == t0_inv && i == 0 && j == n - 1)
}

fn contacts_with(c: &CurveOnSurface, tol: &Tolerance, set: &[DeckElement]) -> Result<Vec<Contact>> {
    let margin = tol.margin();
    let kernel = c.kernel();
    let arcs = c.arcs();
    let pad = |b: Aabb| b.padded(margin * kernel.model_scale(b.max).max(1.0));
    let boxes: Vec<Aabb> = arcs.iter().map(|a| pad(a.bbox())).collect();
    let t0_inv = c.holonomy().inverse();
    let per_deck: Vec<Result<Vec<Contact>>> = set
        .par_iter()
        .map(|t| {
            let images: Vec<Arc> = arcs
                .iter()
                .map(|a| Arc::new(kernel, t.apply_point(a.a()), t.apply_point(a.b())))
                .collect::<Result<_>>()?;
            let image_boxes: Vec<Aabb> = images.iter().map(|a| pad(a.bbox())).collect();
            let mut pairs = candidate_pairs(&boxes, &image_boxes);
            pairs.sort_unstable();
            let mut out = Vec::new();
            for (i, j) in pairs {
                if adjacent(c, t, &t0_inv, i, j) {
                    continue;
                }
                let hit = arc_intersection(&arcs[i], &images[j], margin)?;
                for x in hit.crossings {
                    out.push(Contact {
                        a: (i, x.u),
                        b: (j, x.v),
                        deck: t.clone(),
                        point: x.point,
                        kind: ContactKind::Crossing {
                            sin_angle: x.sin_angle,
                        },
                    });
                }
                for d in hit.degeneracies {
                    let kind = match d.kind {
                        DegeneracyKind::Tangency => ContactKind::Tangency,
                        DegeneracyKind::EndpointTouch => ContactKind::EndpointTouch,
                    };
                    let u = arcs[i].param_of(d.point).clamp(0.0, 1.0);
                    let v = images[j].param_of(d.point).clamp(0.0, 1.0);
                    out.push(Contact {
                        a: (i, u),
                        b: (j, v),
                        deck: t.clone(),
                        point: d.point,
                        kind,
                    });
                }
            }
            Ok(out)
        })
        .collect();
    let mut all = Vec::new();
    for r in per_deck {
        all.extend(r?);
    }
    Ok(all)
}

/// Every meeting of the window with a translate in the search set, including
/// degenerate ones (tangencies, overlaps, vertex contacts).
pub fn contacts(c: &CurveOnSurface, tol: &Tolerance) -> Result<Vec<Contact>> {
    contacts_with(c, tol, &c.search_set(tol))
}

/// Events plus the genericity report.
pub(crate) fn scan(
    c: &CurveOnSurface,
    tol: &Tolerance,
) -> Result<(Vec<DoublePointEvent>, GenericityReport)> {
    let set = c.search_set(tol);
    let raw = contacts_with(c, tol, &set)?;
    let margin = tol.margin();
    let mut report = GenericityReport::default();
    let mut events: Vec<DoublePointEvent> = Vec::new();
    for x in &raw {
        match x.kind {
            ContactKind::Crossing { sin_angle } => {
                let pa = c.param(x.a.0, x.a.1);
                let pb = c.param(x.b.0, x.b.1);
                let (seg_s, seg_t, deck) = if pb < pa {
                    (x.b, x.a, x.deck.clone())
                } else {
                    (x.a, x.b, x.deck.inverse())
                };
                let (s, t) = (c.param(seg_s.0, seg_s.1), c.param(seg_t.0, seg_t.1));
                // each crossing is met once from either side; two arcs meet at most once
                let dup = events.iter().any(|e| {
                    e.deck == deck
                        && ((e.seg_s.0, e.seg_t.0) == (seg_s.0, seg_t.0)
                            || (e.s - s).abs() < 1e-9 && (e.t - t).abs() < 1e-9)
                });
                if dup {
                    continue;
                }
                let kind = classify_deck(&deck, c.holonomy());
                let location = c.arcs()[seg_t.0].point_at(seg_t.1);
                events.push(DoublePointEvent {
                    s,
                    t,
                    deck,
                    location,
                    kind,
                    seg_s,
                    seg_t,
                    sin_angle,
                });
            }
            ContactKind::Tangency | ContactKind::EndpointTouch => {
                let kind = if x.kind == ContactKind::Tangency {
                    ViolationKind::Tangency
                } else {
                    ViolationKind::VertexIncidence
                };
                let dup = report
                    .violations
                    .iter()
                    .any(|v| v.kind == kind && v.location.dist(x.point) < margin);
                if !dup {
                    report.push(
                        kind,
                        x.point,
                        format!("arc {} meets arc {} of translate {}", x.a.0, x.b.0, x.deck),
                    );
                }
            }
        }
    }
    events.sort_by(|x, y| {
        (x.s, x.t)
            .partial_cmp(&(y.s, y.t))
            .expect("finite parameters")
    });

    // distinct double points must be separated on the surface; coincident
    // ones sharing a pass are triple points
    for (k, e1) in events.iter().enumerate() {
        for e2 in &events[k + 1..] {
            let d = c.surface_distance(e1.location, e2.location, &set);
            if d < margin {
                let shared = [e1.s, e1.t]
                    .iter()
                    .any(|p| (p - e2.s).abs() < 1e-7 || (p - e2.t).abs() < 1e-7);
                let kind = if shared {
                    ViolationKind::TriplePoint
                } else {
                    ViolationKind::MarginBreach
                };
                let dup = report
                    .violations
                    .iter()
                    .any(|v| v.kind == kind && v.location.dist(e1.location) < margin);
                if !dup {
                    report.push(
                        kind,
                        e1.location,
                        format!("events at s={:.9} and s={:.9} coincide", e1.s, e2.s),
                    );
                }
            }
        }
    }
    Ok((events, report))
}

/// Checks that all self-intersections on the surface are transversal double
/// points, away from vertices and from each other by the tolerance margin.
pub fn validate_generic(c: &CurveOnSurface, tol: &Tolerance) -> Result<GenericityReport> {
    Ok(scan(c, tol)?.1)
}

/// All double points of a generic curve, sorted by `(s, t)`.
pub fn double_points(c: &CurveOnSurface, tol: &Tolerance) -> Result<Vec<DoublePointEvent>> {
    let (events, report) = scan(c, tol)?;
    if !report.ok {
        return Err(Error::NonGeneric(Box::new(report)));
    }
    Ok(events)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::add_kink;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn torus_line() -> CurveOnSurface {
        CurveOnSurface::new(DeckElement::torus(1, 0), vec![Point::new(0.0, 0.5)]).unwrap()
    }

    /// Number of double points found by intersecting every window arc with
    /// every arc of every translate in `[-range, range]^2`. Each double point
    /// shows up twice, once from each of its passes.
    fn brute_force_count(c: &CurveOnSurface, range: i64) -> usize {
        let arcs = c.arcs();
        let mut hits = 0;
        for a in -range..=range {
            for b in -range..=range {
                let t = DeckElement::torus(a, b);
                for x in arcs {
                    for y in arcs {
                        let img = Arc::new(c.kernel(), t.apply_point(y.a()), t.apply_point(y.b()))
                            .unwrap();
                        hits += arc_intersection(x, &img, 1e-6).unwrap().crossings.len();
                    }
                }
            }
        }
        assert_eq!(hits % 2, 0);
        hits / 2
    }

    #[test]
    fn embedded_geodesic_is_generic() {
        let c = torus_line();
        let r = validate_generic(&c, &tol()).unwrap();
        assert!(r.ok && r.violations.is_empty());
        assert!(double_points(&c, &tol()).unwrap().is_empty());
    }

    #[test]
    fn kinked_geodesic_has_one_event() {
        let c = CurveOnSurface::new(
            DeckElement::torus(1, 0),
            vec![Point::new(0.0, 0.5), Point::new(0.5, 0.5)],
        )
        .unwrap();
        let k = add_kink(&c, 0.25, 1, 0.05, &tol()).unwrap();
        let ev = double_points(&k, &tol()).unwrap();
        assert_eq!(ev.len(), 1);
        assert_eq!(ev[0].kind, EventKind::Dpm(0));
        assert_eq!(brute_force_count(&k, 1), 1);
    }

    #[test]
    fn collinear_overlap_is_tangency() {
        // the (1,0)-translate of the first half lies on the second half
        let overlap = CurveOnSurface::new(
            DeckElement::torus(2, 0),
            vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0)],
        )
        .unwrap();
        let r = validate_generic(&overlap, &tol()).unwrap();
        assert!(!r.ok);
        assert!(r.has(ViolationKind::Tangency));
        assert!(matches!(
            double_points(&overlap, &tol()),
            Err(Error::NonGeneric(_))
        ));
    }

    #[test]
    fn triple_point_detected() {
        // three strands through (0.5, 0.5) on the torus: horizontal,
        // vertical, diagonal, joined far from the crossing
        let c = CurveOnSurface::new(
            DeckElement::torus(0, 0),
            vec![
                Point::new(0.1, 0.5),
                Point::new(0.9, 0.5),
                Point::new(0.95, 0.95),
                Point::new(0.5, 0.9),
                Point::new(0.5, 0.1),
                Point::new(0.8, 0.05),
                Point::new(0.8, 0.8),
                Point::new(0.2, 0.2),
                Point::new(0.05, 0.3),
            ],
        )
        .unwrap();
        let r = validate_generic(&c, &tol()).unwrap();
        assert!(r.has(ViolationKind::TriplePoint), "{r:?}");
        // confirm the three pairwise crossings coincide
        let arcs = c.arcs();
        let pts: Vec<Point> = [(0, 3), (0, 6), (3, 6)]
            .iter()
            .map(|&(i, j)| {
                arc_intersection(&arcs[i], &arcs[j], 1e-12)
                    .unwrap()
                    .crossings[0]
                    .point
            })
            .collect();
        assert!(pts.iter().all(|p| p.dist(Point::new(0.5, 0.5)) < 1e-12));
    }

    #[test]
    fn vertex_incidence_detected() {
        // the vertex (0.5, 0) sits on the first segment
        let c = CurveOnSurface::new(
            DeckElement::torus(1, 0),
            vec![
                Point::new(0.0, 0.0),
                Point::new(0.8, 0.0),
                Point::new(0.8, 0.3),
                Point::new(0.5, 0.0),
                Point::new(0.4, -0.3),
            ],
        )
        .unwrap();
        let r = validate_generic(&c, &tol()).unwrap();
        assert!(r.has(ViolationKind::VertexIncidence), "{r:?}");
    }

    #[test]
    fn torus_translate_event_classification() {
        // a curve of holonomy (1,0) with a vertical excursion long enough to
        // cross its own (0,1)-translate
        let c = CurveOnSurface::new(
            DeckElement::torus(1, 0),
            vec![
                Point::new(0.0, 0.0),
                Point::new(0.3, 0.0),
                Point::new(0.6, 1.3),
                Point::new(0.5, 0.0),
            ],
        )
        .unwrap();
        let ev = double_points(&c, &tol()).unwrap();
        assert!(!ev.is_empty());
        assert_eq!(ev.len(), brute_force_count(&c, 2));
        for e in &ev {
            let expected = match cyclic_power(&e.deck, c.holonomy()).unwrap() {
                Some(j) => EventKind::Dpm(j),
                None => EventKind::D0,
            };
            assert_eq!(e.kind, expected);
            assert_eq!(classify(&c, e), expected);
            // the defining relation γ̃(t) = T γ̃(s)
            assert!(
                e.deck
                    .apply_point(c.cover_point(e.s))
                    .dist(c.cover_point(e.t))
                    < 1e-9
            );
            assert!(e.s < e.t && e.t < 1.0 && e.s >= 0.0);
        }
        assert!(ev.iter().any(|e| e.kind == EventKind::D0));
    }

    #[test]
    fn classify_examples() {
        let t0 = DeckElement::torus(1, 0);
        assert_eq!(
            classify_deck(&DeckElement::torus(0, 0), &t0),
            EventKind::Dpm(0)
        );
        assert_eq!(classify_deck(&t0, &t0), EventKind::Dpm(1));
        assert_eq!(classify_deck(&DeckElement::torus(0, 1), &t0), EventKind::D0);
    }

    #[test]
    fn loop_class_examples() {
        let c = CurveOnSurface::new(
            DeckElement::torus(1, 0),
            vec![Point::new(0.0, 0.5), Point::new(0.5, 0.5)],
        )
        .unwrap();
        let k = add_kink(&c, 0.25, 1, 0.05, &tol()).unwrap();
        let e = &double_points(&k, &tol()).unwrap()[0];
        let (g1, g2, left) = loop_classes_at(&k, e, &tol()).unwrap();
        assert_eq!(g1, DeckElement::torus(0, 0));
        assert_eq!(g2, DeckElement::torus(1, 0));
        assert!(left);

        let mut fake = e.clone();
        fake.deck = DeckElement::torus(0, 1);
        let (g1, g2, _) = loop_classes_at(&k, &fake, &tol()).unwrap();
        assert_eq!(
            (g1, g2),
            (DeckElement::torus(0, 1), DeckElement::torus(1, -1))
        );
        fake.deck = DeckElement::torus(1, 0);
        let (g1, g2, _) = loop_classes_at(&k, &fake, &tol()).unwrap();
        assert_eq!(
            (g1, g2),
            (DeckElement::torus(1, 0), DeckElement::torus(0, 0))
        );
    }

    #[test]
    fn candidate_pairs_matches_quadratic_scan() {
        let boxes = |seed: u64| -> Vec<Aabb> {
            (0..40)
                .map(|k| {
                    let x = ((k as u64 * 7919 + seed) % 97) as f64 / 10.0;
                    let y = ((k as u64 * 104729 + seed) % 89) as f64 / 10.0;
                    Aabb::new(x, y, x + 0.8, y + 0.5)
                })
                .collect()
        };
        let a = boxes(3);
        let b = boxes(11);
        let mut fast = candidate_pairs(&a, &b);
        fast.sort_unstable();
        let mut slow = Vec::new();
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                if x.overlaps(y) {
                    slow.push((i, j));
                }
            }
        }
        assert_eq!(fast, slow);
    }
}
