//! Static SVG of a curve projected to a fundamental domain.

use std::fmt::Write;

use curvewind::deck::FreeWord;
use curvewind::geometry::Aabb;
use curvewind::{
    double_points, sign_of_event, CurveOnSurface, DeckElement, EventKind, GroupKind, Point, Result,
    Tolerance,
};

const WIDTH: f64 = 800.0;
const PAD: f64 = 24.0;
const ARC_SAMPLES: usize = 24;

/// Moves `p` into the fundamental domain; returns the image and the element used.
fn reduce(kind: GroupKind, p: Point) -> (Point, DeckElement) {
    match kind {
        GroupKind::Torus => {
            let (a, b) = (p.x.floor(), p.y.floor());
            (
                Point::new(p.x - a, p.y - b),
                DeckElement::torus(-a as i64, -b as i64),
            )
        }
        GroupKind::Klein => {
            let m = p.x.floor();
            let y = if (m as i64) % 2 == 0 { p.y } else { -p.y };
            let n = y.floor();
            let g = DeckElement::klein(0, -n as i64)
                .compose(&DeckElement::klein(-m as i64, 0))
                .expect("same group");
            (Point::new(p.x - m, y - n), g)
        }
        GroupKind::Sanov => {
            // |Re z| <= 1 outside the disks |z -+ 1/2| < 1/2
            let mut g = DeckElement::sanov(&[]);
            let mut q = p;
            for _ in 0..200 {
                let step = if q.x > 1.0 {
                    DeckElement::sanov(&[-1])
                } else if q.x < -1.0 {
                    DeckElement::sanov(&[1])
                } else if Point::new(q.x - 0.5, q.y).dist(Point::new(0.0, 0.0)) < 0.5 {
                    DeckElement::sanov(&[-2])
                } else if Point::new(q.x + 0.5, q.y).dist(Point::new(0.0, 0.0)) < 0.5 {
                    DeckElement::sanov(&[2])
                } else {
                    break;
                };
                q = step.apply_point(q);
                g = step.compose(&g).expect("same group");
            }
            (q, g)
        }
    }
}

/// The curve cut along the domain boundary into polylines inside the domain.
fn projected_pieces(c: &CurveOnSurface) -> Vec<Vec<Point>> {
    let kind = c.group();
    let mut pieces: Vec<Vec<Point>> = Vec::new();
    let mut current: Vec<Point> = Vec::new();
    let mut prev: Option<(Point, DeckElement)> = None;
    for arc in c.arcs() {
        for k in 0..=ARC_SAMPLES {
            let p = arc.point_at(k as f64 / ARC_SAMPLES as f64);
            let (q, g) = reduce(kind, p);
            if let Some((pp, pg)) = &prev {
                if *pg != g {
                    current.push(pg.apply_point(p));
                    pieces.push(std::mem::take(&mut current));
                    current.push(g.apply_point(*pp));
                }
            }
            current.push(q);
            prev = Some((p, g));
        }
    }
    pieces.push(current);
    pieces.retain(|p| p.len() > 1);
    pieces
}

fn domain_outline(kind: GroupKind, top: f64) -> Vec<Vec<Point>> {
    match kind {
        GroupKind::Torus | GroupKind::Klein => vec![vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
            Point::new(0.0, 0.0),
        ]],
        GroupKind::Sanov => {
            let semicircle = |cx: f64| -> Vec<Point> {
                (0..=48)
                    .map(|k| {
                        let a = std::f64::consts::PI * k as f64 / 48.0;
                        Point::new(cx + 0.5 * a.cos(), (0.5 * a.sin()).max(1e-3))
                    })
                    .collect()
            };
            let side = |x: f64| -> Vec<Point> {
                (0..=24)
                    .map(|k| Point::new(x, 1e-3 + (top - 1e-3) * k as f64 / 24.0))
                    .collect()
            };
            vec![side(-1.0), side(1.0), semicircle(-0.5), semicircle(0.5)]
        }
    }
}

fn translates(kind: GroupKind, n: usize) -> Vec<DeckElement> {
    let n = n as i64;
    match kind {
        GroupKind::Torus => (-n..=n)
            .flat_map(|a| (-n..=n).map(move |b| DeckElement::torus(a, b)))
            .collect(),
        GroupKind::Klein => (-n..=n)
            .flat_map(|m| (-n..=n).map(move |k| DeckElement::klein(m, k)))
            .collect(),
        GroupKind::Sanov => FreeWord::all_up_to(n as usize)
            .into_iter()
            .map(DeckElement::Sanov)
            .collect(),
    }
}

struct Frame {
    bbox: Aabb,
    scale: f64,
}

impl Frame {
    fn new(bbox: Aabb) -> Self {
        let w = (bbox.max.x - bbox.min.x).max(1e-9);
        Frame {
            bbox,
            scale: (WIDTH - 2.0 * PAD) / w,
        }
    }

    fn height(&self) -> f64 {
        (self.bbox.max.y - self.bbox.min.y) * self.scale + 2.0 * PAD
    }

    fn map(&self, p: Point) -> (f64, f64) {
        (
            PAD + (p.x - self.bbox.min.x) * self.scale,
            PAD + (self.bbox.max.y - p.y) * self.scale,
        )
    }

    fn path(&self, pts: &[Point]) -> String {
        let mut d = String::new();
        for (i, p) in pts.iter().enumerate() {
            let (x, y) = self.map(*p);
            let _ = write!(d, "{}{x:.2},{y:.2} ", if i == 0 { "M" } else { "L" });
        }
        d
    }
}

/// SVG with the fundamental domain, `n` rings of translates, the projected
/// curve, and its double points (`D0` hollow, `D±` filled with their sign).
pub fn svg(c: &CurveOnSurface, n: usize, tol: &Tolerance) -> Result<String> {
    let kind = c.group();
    let events = double_points(c, tol)?;
    let pieces = projected_pieces(c);
    let top = match kind {
        GroupKind::Sanov => pieces.iter().flatten().map(|p| p.y).fold(1.0, f64::max) * 1.2,
        _ => 1.0,
    };
    let outline = domain_outline(kind, top);
    let mut group = translates(kind, n);
    // the base domain is drawn last, on top of its translates
    group.sort_by_key(|g| g.is_identity());

    let mut bbox = Aabb::from_point(Point::new(0.0, 0.0));
    for g in &group {
        for p in outline.iter().chain(&pieces).flatten() {
            bbox.include(g.apply_point(*p));
        }
    }
    let frame = Frame::new(bbox);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{h:.0}" viewBox="0 0 {WIDTH} {h:.2}">"#,
        h = frame.height()
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for g in &group {
        let base = g.is_identity();
        let (stroke, curve, width) = if base {
            ("#333", "#1f5fbf", 2.0)
        } else {
            ("#bbb", "#9db7e0", 1.0)
        };
        for line in &outline {
            let pts: Vec<Point> = line.iter().map(|p| g.apply_point(*p)).collect();
            let _ = writeln!(
                out,
                r#"<path d="{}" fill="none" stroke="{stroke}" stroke-width="1"/>"#,
                frame.path(&pts)
            );
        }
        for piece in &pieces {
            let pts: Vec<Point> = piece.iter().map(|p| g.apply_point(*p)).collect();
            let _ = writeln!(
                out,
                r#"<path d="{}" fill="none" stroke="{curve}" stroke-width="{width}" stroke-linejoin="round"/>"#,
                frame.path(&pts)
            );
        }
    }
    for e in &events {
        let (q, _) = reduce(kind, e.location);
        let (x, y) = frame.map(q);
        match e.kind {
            EventKind::D0 => {
                let _ = writeln!(
                    out,
                    r##"<circle cx="{x:.2}" cy="{y:.2}" r="5" fill="white" stroke="#2a8f3a" stroke-width="2"/>"##
                );
            }
            EventKind::Dpm(_) => {
                let label = if sign_of_event(c, e, tol)? > 0 {
                    "+"
                } else {
                    "\u{2212}"
                };
                let _ = writeln!(
                    out,
                    r##"<circle cx="{x:.2}" cy="{y:.2}" r="5" fill="#c0392b"/>"##
                );
                let _ = writeln!(
                    out,
                    r##"<text x="{:.2}" y="{:.2}" font-family="sans-serif" font-size="14" fill="#c0392b">{label}</text>"##,
                    x + 7.0,
                    y - 7.0
                );
            }
        }
    }
    out.push_str("</svg>\n");
    Ok(out)
}
