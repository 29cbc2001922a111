//! Curves on surfaces, stored as one period of a cover in the model plane.
//!
//! A [`CurveOnSurface`] holds the lift vertices `V_0 .. V_{N-1}` and the
//! holonomy `T0`; the vertex after `V_{N-1}` is `T0 V_0`. The data is both the
//! closed curve on the surface and a particular cover of it: the cover is the
//! infinite polyline `γ̃(u + 1) = T0 γ̃(u)`, and another cover is obtained with
//! [`CurveOnSurface::change_cover`].

mod construct;
mod generic;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::deck::{enumerate_overlapping, DeckElement, GroupKind};
use crate::error::{Error, Result};
use crate::geometry::{Aabb, Arc, Direction, Kernel, Point};
use crate::tolerance::{Tolerance, MIN_TURN_GAP};

pub use construct::{
    add_kink, geodesic_representative, horocycle_representative, kink_clearance, perturb,
    DEFAULT_AXIS_SAMPLES, DEFAULT_HOROCYCLE_SAMPLES,
};
pub use generic::{
    classify, classify_deck, contacts, double_points, loop_classes_at, validate_generic, Contact,
    ContactKind, DoublePointEvent, EventKind, GenericityReport, Violation, ViolationKind,
};

/// A closed piecewise-geodesic curve together with a chosen cover.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveOnSurface {
    group: GroupKind,
    holonomy: DeckElement,
    vertices: Vec<Point>,
    arcs: Vec<Arc>,
}

impl CurveOnSurface {
    /// Builds a curve, checking the structural invariants: at least one
    /// vertex, distinct consecutive vertices, and every turn (including the
    /// one at the seam `V_N = T0 V_0`) strictly below `PI - MIN_TURN_GAP`.
    pub fn new(holonomy: DeckElement, vertices: Vec<Point>) -> Result<Self> {
        let group = holonomy.group();
        let n = vertices.len();
        if n == 0 {
            return Err(Error::MalformedCurve("no vertices".into()));
        }
        let kernel = group.kernel();
        let end = holonomy.apply_point(vertices[0]);
        let arcs = (0..n)
            .map(|i| {
                let b = if i + 1 == n { end } else { vertices[i + 1] };
                Arc::new(kernel, vertices[i], b).map_err(|e| match e {
                    Error::MalformedCurve(m) => Error::MalformedCurve(format!("segment {i}: {m}")),
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let c = CurveOnSurface {
            group,
            holonomy,
            vertices,
            arcs,
        };
        for (k, turn) in c.turns().into_iter().enumerate() {
            if turn.abs() >= PI - MIN_TURN_GAP {
                return Err(Error::MalformedCurve(format!(
                    "turn of {:.6} rad at vertex {k} is not regular",
                    turn
                )));
            }
        }
        Ok(c)
    }

    pub fn group(&self) -> GroupKind {
        self.group
    }

    pub fn kernel(&self) -> Kernel {
        self.group.kernel()
    }

    pub fn holonomy(&self) -> &DeckElement {
        &self.holonomy
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// The `N` arcs of the window `γ̃|[0,1]`; arc `i` runs from `V_i` to `V_{i+1}`.
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_null_homotopic(&self) -> bool {
        self.holonomy.is_identity()
    }

    /// Curve parameter of a point on arc `seg` at arc parameter `frac`.
    pub fn param(&self, seg: usize, frac: f64) -> f64 {
        (seg as f64 + frac) / self.len() as f64
    }

    /// Splits a cover parameter into `(period, arc index, arc parameter)`.
    pub fn locate(&self, u: f64) -> (i64, usize, f64) {
        let n = self.len() as f64;
        let x = u * n;
        let k = x.floor();
        let period = (k / n).floor();
        let seg = (k - period * n) as usize;
        (period as i64, seg.min(self.len() - 1), x - k)
    }

    /// `γ̃(u)` for any real `u`.
    pub fn cover_point(&self, u: f64) -> Point {
        let (k, seg, frac) = self.locate(u);
        let p = self.arcs[seg].point_at(frac);
        if k == 0 {
            p
        } else {
            self.holonomy.pow(k).apply_point(p)
        }
    }

    /// Unit tangent of the cover at `u`.
    pub fn cover_tangent(&self, u: f64) -> Direction {
        let (k, seg, frac) = self.locate(u);
        let arc = &self.arcs[seg];
        let v = arc.tangent_at(frac);
        if k == 0 {
            v
        } else {
            self.holonomy.pow(k).apply_vector(arc.point_at(frac), v)
        }
    }

    /// Signed turning angles at `V_1 .. V_{N-1}` followed by the seam turn at `V_N`.
    pub fn turns(&self) -> Vec<f64> {
        let n = self.len();
        let mut out = Vec::with_capacity(n);
        for i in 1..n {
            out.push(
                self.arcs[i - 1]
                    .tangent_at(1.0)
                    .turn_to(self.arcs[i].tangent_at(0.0)),
            );
        }
        let first = self
            .holonomy
            .apply_vector(self.vertices[0], self.arcs[0].tangent_at(0.0));
        out.push(self.arcs[n - 1].tangent_at(1.0).turn_to(first));
        out
    }

    /// Total signed turning of the window: vertex turns, the seam turn, and
    /// the rotation of the model tangent along each arc.
    pub fn total_turning(&self) -> f64 {
        let along: f64 = self
            .arcs
            .iter()
            .map(|a| {
                let mid = a.tangent_at(0.5);
                a.tangent_at(0.0).turn_to(mid) + mid.turn_to(a.tangent_at(1.0))
            })
            .sum();
        self.turns().iter().sum::<f64>() + along
    }

    /// Moves `delta` kernel units along the window from arc `seg` at
    /// parameter `frac`; `None` if that leaves the window.
    pub fn walk(&self, seg: usize, frac: f64, delta: f64) -> Option<(usize, f64)> {
        let mut seg = seg;
        let mut pos = frac * self.arcs[seg].length() + delta;
        loop {
            let len = self.arcs[seg].length();
            if pos < 0.0 {
                if seg == 0 {
                    return None;
                }
                seg -= 1;
                pos += self.arcs[seg].length();
            } else if pos > len {
                if seg + 1 == self.len() {
                    return None;
                }
                pos -= len;
                seg += 1;
            } else {
                return Some((seg, pos / len));
            }
        }
    }

    /// Bounding box of the window `γ̃|[0,1]`.
    pub fn window_box(&self) -> Aabb {
        self.arcs
            .iter()
            .skip(1)
            .fold(self.arcs[0].bbox(), |b, a| b.union(&a.bbox()))
    }

    /// Deck elements moving the window onto itself (up to the margin).
    pub fn search_set(&self, tol: &Tolerance) -> Vec<DeckElement> {
        let b = self.window_box().padded(tol.margin());
        enumerate_overlapping(self.group, &b, &b, tol.word_bound)
    }

    /// Distance on the surface between the projections of two window points,
    /// minimized over `set` (kernel distance).
    pub fn surface_distance(&self, p: Point, q: Point, set: &[DeckElement]) -> f64 {
        set.iter()
            .map(|t| self.kernel().dist(p, t.apply_point(q)))
            .fold(f64::INFINITY, f64::min)
    }

    /// The cover `S ∘ γ̃`: vertices mapped by `S`, holonomy `S T0 S^-1`.
    pub fn change_cover(&self, s: &DeckElement) -> Result<CurveOnSurface> {
        let holonomy = s.conjugate(&self.holonomy)?;
        let vertices = self.vertices.iter().map(|&v| s.apply_point(v)).collect();
        CurveOnSurface::new(holonomy, vertices)
    }

    pub fn to_file(&self) -> CurveFile {
        CurveFile {
            surface: self.group,
            holonomy: match &self.holonomy {
                DeckElement::Torus { a, b } => HolonomyRepr::Pair([*a, *b]),
                DeckElement::Klein { m, n } => HolonomyRepr::Pair([*m, *n]),
                DeckElement::Sanov(w) => HolonomyRepr::Word(w.to_string()),
            },
            vertices: self.vertices.iter().map(|p| [p.x, p.y]).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("curve serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("curve serializes")
    }

    /// Parses the curve file format; any failure is a `MalformedCurve`.
    pub fn from_json(text: &str) -> Result<CurveOnSurface> {
        let f: CurveFile =
            serde_json::from_str(text).map_err(|e| Error::MalformedCurve(e.to_string()))?;
        f.into_curve()
    }
}

/// Free-function form of [`CurveOnSurface::change_cover`].
pub fn change_cover(c: &CurveOnSurface, s: &DeckElement) -> Result<CurveOnSurface> {
    c.change_cover(s)
}

/// Holonomy as written in curve files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum HolonomyRepr {
    Pair([i64; 2]),
    Word(String),
}

/// On-disk form of a curve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    pub surface: GroupKind,
    pub holonomy: HolonomyRepr,
    pub vertices: Vec<[f64; 2]>,
}

impl CurveFile {
    pub fn into_curve(self) -> Result<CurveOnSurface> {
        let holonomy = match (self.surface, self.holonomy) {
            (GroupKind::Torus, HolonomyRepr::Pair([a, b])) => DeckElement::torus(a, b),
            (GroupKind::Klein, HolonomyRepr::Pair([m, n])) => DeckElement::klein(m, n),
            (GroupKind::Sanov, HolonomyRepr::Word(w)) => DeckElement::Sanov(
                w.parse()
                    .map_err(|e: Error| Error::MalformedCurve(e.to_string()))?,
            ),
            (s, h) => {
                return Err(Error::MalformedCurve(format!(
                    "holonomy {h:?} does not fit surface {}",
                    s.name()
                )));
            }
        };
        CurveOnSurface::new(
            holonomy,
            self.vertices
                .into_iter()
                .map(|[x, y]| Point::new(x, y))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus_line() -> CurveOnSurface {
        CurveOnSurface::new(DeckElement::torus(1, 0), vec![Point::new(0.0, 0.5)]).unwrap()
    }

    #[test]
    fn cover_is_periodic() {
        let c = CurveOnSurface::new(
            DeckElement::torus(1, 1),
            vec![
                Point::new(0.0, 0.0),
                Point::new(0.4, 0.6),
                Point::new(0.8, 0.7),
            ],
        )
        .unwrap();
        for u in [0.1, 0.37, 0.9] {
            let p = c.cover_point(u + 1.0);
            let q = c.holonomy().apply_point(c.cover_point(u));
            assert!(p.dist(q) < 1e-12);
            let p = c.cover_point(u - 2.0);
            let q = c.holonomy().pow(-2).apply_point(c.cover_point(u));
            assert!(p.dist(q) < 1e-12);
        }
    }

    #[test]
    fn locate_splits_parameters() {
        let c = CurveOnSurface::new(
            DeckElement::torus(1, 0),
            vec![
                Point::new(0.0, 0.0),
                Point::new(0.25, 0.1),
                Point::new(0.5, 0.0),
                Point::new(0.75, -0.1),
            ],
        )
        .unwrap();
        let (k, seg, frac) = c.locate(1.3);
        assert_eq!((k, seg), (1, 1));
        assert!((frac - 0.2).abs() < 1e-12);
        let (k, seg, _) = c.locate(-0.1);
        assert_eq!((k, seg), (-1, 3));
    }

    #[test]
    fn rejects_cusps_and_repeats() {
        let cusp = CurveOnSurface::new(
            DeckElement::torus(0, 0),
            vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0)],
        );
        assert!(matches!(cusp, Err(Error::MalformedCurve(_))));
        let repeat = CurveOnSurface::new(
            DeckElement::torus(1, 0),
            vec![Point::new(0.0, 0.0), Point::new(0.0, 0.0)],
        );
        assert!(matches!(repeat, Err(Error::MalformedCurve(_))));
        assert!(matches!(
            CurveOnSurface::new(DeckElement::torus(1, 0), vec![]),
            Err(Error::MalformedCurve(_))
        ));
        let below = CurveOnSurface::new(DeckElement::sanov(&[1]), vec![Point::new(0.0, -1.0)]);
        assert!(matches!(below, Err(Error::MalformedCurve(_))));
    }

    #[test]
    fn seam_turn_uses_holonomy_differential() {
        // klein glide: the seam sees the first direction reflected
        let ok = CurveOnSurface::new(
            DeckElement::klein(1, 0),
            vec![Point::new(0.0, 0.0), Point::new(0.5, 0.0)],
        );
        assert!(ok.is_ok());
        let t = ok.unwrap().turns();
        assert!(t.iter().all(|a| a.abs() < 1e-12));
    }

    #[test]
    fn change_cover_examples() {
        let c = torus_line();
        assert_eq!(c.change_cover(&DeckElement::torus(0, 0)).unwrap(), c);
        let moved = c.change_cover(&DeckElement::torus(5, 5)).unwrap();
        assert_eq!(moved.holonomy(), c.holonomy());
        assert_eq!(moved.vertices()[0], Point::new(5.0, 5.5));
        let k = CurveOnSurface::new(DeckElement::klein(0, 1), vec![Point::new(0.5, 0.0)]).unwrap();
        assert_eq!(
            k.change_cover(&DeckElement::klein(1, 0))
                .unwrap()
                .holonomy(),
            &DeckElement::klein(0, -1)
        );
        assert!(matches!(
            c.change_cover(&DeckElement::klein(1, 0)),
            Err(Error::MixedGroups)
        ));
    }

    #[test]
    fn json_round_trip() {
        let c = geodesic_representative(&DeckElement::sanov(&[1, 2]), 16).unwrap();
        assert_eq!(CurveOnSurface::from_json(&c.to_json()).unwrap(), c);
        let t = torus_line();
        assert_eq!(CurveOnSurface::from_json(&t.to_json()).unwrap(), t);
        assert_eq!(
            t.to_json(),
            r#"{"surface":"torus","holonomy":[1,0],"vertices":[[0.0,0.5]]}"#
        );
    }

    #[test]
    fn malformed_files() {
        for text in [
            "not json",
            r#"{"surface":"torus","holonomy":"g1","vertices":[[0,0]]}"#,
            r#"{"surface":"sphere","holonomy":[1,0],"vertices":[[0,0]]}"#,
            r#"{"surface":"torus","holonomy":[1,0],"vertices":[]}"#,
            r#"{"surface":"sanov","holonomy":"g3","vertices":[[0,1]]}"#,
        ] {
            assert!(
                matches!(
                    CurveOnSurface::from_json(text),
                    Err(Error::MalformedCurve(_))
                ),
                "{text}"
            );
        }
    }
}
