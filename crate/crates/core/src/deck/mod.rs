//! Deck-transformation groups of the three shipped surfaces.
//!
//! * `Torus`: translations `(x, y) -> (x + a, y + b)` of the Euclidean plane.
//! * `Klein`: `A^m B^n (x, y) = (x + m, (-1)^m (y + n))` with the glide
//!   reflection `A(x, y) = (x + 1, -y)` and `B(x, y) = (x, y + 1)`, so
//!   `A B A^-1 = B^-1`; the fundamental domain is the unit square.
//! * `Sanov`: the free group generated by `g1 = [[1,2],[0,1]]` and
//!   `g2 = [[1,0],[2,1]]` acting by Möbius maps on the upper half-plane.
//!
//! New surfaces plug in by adding a `GroupKind` variant and its arms.

pub mod word;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{hyperbolic, Aabb, Direction, Kernel, Point};
pub use word::FreeWord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Torus,
    Klein,
    Sanov,
}

impl GroupKind {
    pub fn kernel(self) -> Kernel {
        match self {
            GroupKind::Torus | GroupKind::Klein => Kernel::Euclid,
            GroupKind::Sanov => Kernel::Hyperbolic,
        }
    }

    pub fn is_orientable(self) -> bool {
        !matches!(self, GroupKind::Klein)
    }

    pub fn identity(self) -> DeckElement {
        match self {
            GroupKind::Torus => DeckElement::Torus { a: 0, b: 0 },
            GroupKind::Klein => DeckElement::Klein { m: 0, n: 0 },
            GroupKind::Sanov => DeckElement::Sanov(FreeWord::identity()),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GroupKind::Torus => "torus",
            GroupKind::Klein => "klein",
            GroupKind::Sanov => "sanov",
        }
    }
}

impl std::str::FromStr for GroupKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "torus" => Ok(GroupKind::Torus),
            "klein" => Ok(GroupKind::Klein),
            "sanov" => Ok(GroupKind::Sanov),
            _ => Err(Error::Parse(format!("unknown surface {s:?}"))),
        }
    }
}

/// An element of one of the deck groups.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DeckElement {
    Torus {
        a: i64,
        b: i64,
    },
    /// `A^m B^n`.
    Klein {
        m: i64,
        n: i64,
    },
    Sanov(FreeWord),
}

/// The action of a deck element, with the group data resolved to floats.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Isometry {
    /// `(x, y) -> (x + tx, s*y + ty)` with `s = -1` when `flip`.
    Affine { flip: bool, tx: f64, ty: f64 },
    /// `z -> (a z + b) / (c z + d)`, determinant one.
    Mobius([f64; 4]),
}

impl Isometry {
    pub fn apply_point(&self, p: Point) -> Point {
        match *self {
            Isometry::Affine { flip, tx, ty } => {
                Point::new(p.x + tx, if flip { -p.y } else { p.y } + ty)
            }
            Isometry::Mobius([a, b, c, d]) => {
                // (a z + b) / (c z + d)
                let nr = a * p.x + b;
                let ni = a * p.y;
                let dr = c * p.x + d;
                let di = c * p.y;
                let den = dr * dr + di * di;
                Point::new((nr * dr + ni * di) / den, (ni * dr - nr * di) / den)
            }
        }
    }

    /// Direction of the differential at `p` applied to `v`.
    pub fn apply_vector(&self, p: Point, v: Direction) -> Direction {
        match *self {
            Isometry::Affine { flip, .. } => {
                if flip {
                    Direction {
                        dx: v.dx,
                        dy: -v.dy,
                    }
                } else {
                    v
                }
            }
            Isometry::Mobius([_, _, c, d]) => {
                // derivative 1/(c z + d)^2 rotates by -2 arg(c z + d)
                let rot = -2.0 * (c * p.y).atan2(c * p.x + d);
                Direction::from_angle(v.angle() + rot)
            }
        }
    }

    /// Whether the differential is the identity on directions everywhere.
    pub fn has_trivial_differential(&self) -> bool {
        match *self {
            Isometry::Affine { flip, .. } => !flip,
            Isometry::Mobius([a, b, c, d]) => c == 0.0 && a == d && b == 0.0,
        }
    }
}

fn klein_sign(m: i64) -> i64 {
    if m.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl DeckElement {
    pub fn group(&self) -> GroupKind {
        match self {
            DeckElement::Torus { .. } => GroupKind::Torus,
            DeckElement::Klein { .. } => GroupKind::Klein,
            DeckElement::Sanov(_) => GroupKind::Sanov,
        }
    }

    pub fn torus(a: i64, b: i64) -> Self {
        DeckElement::Torus { a, b }
    }

    pub fn klein(m: i64, n: i64) -> Self {
        DeckElement::Klein { m, n }
    }

    pub fn sanov(letters: &[word::Letter]) -> Self {
        DeckElement::Sanov(FreeWord::new(letters))
    }

    pub fn is_identity(&self) -> bool {
        match self {
            DeckElement::Torus { a, b } => *a == 0 && *b == 0,
            DeckElement::Klein { m, n } => *m == 0 && *n == 0,
            DeckElement::Sanov(w) => w.is_empty(),
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &DeckElement) -> Result<DeckElement> {
        match (self, other) {
            (DeckElement::Torus { a, b }, DeckElement::Torus { a: c, b: d }) => {
                Ok(DeckElement::torus(a + c, b + d))
            }
            (DeckElement::Klein { m, n }, DeckElement::Klein { m: p, n: q }) => {
                Ok(DeckElement::klein(m + p, klein_sign(*p) * n + q))
            }
            (DeckElement::Sanov(x), DeckElement::Sanov(y)) => Ok(DeckElement::Sanov(x.mul(y))),
            _ => Err(Error::MixedGroups),
        }
    }

    pub fn inverse(&self) -> DeckElement {
        match self {
            DeckElement::Torus { a, b } => DeckElement::torus(-a, -b),
            DeckElement::Klein { m, n } => DeckElement::klein(-m, -klein_sign(*m) * n),
            DeckElement::Sanov(w) => DeckElement::Sanov(w.inverse()),
        }
    }

    pub fn pow(&self, j: i64) -> DeckElement {
        match self {
            DeckElement::Torus { a, b } => DeckElement::torus(a * j, b * j),
            DeckElement::Klein { m, n } => {
                if klein_sign(*m) == 1 {
                    DeckElement::klein(m * j, n * j)
                } else {
                    DeckElement::klein(m * j, if j.rem_euclid(2) == 1 { *n } else { 0 })
                }
            }
            DeckElement::Sanov(w) => DeckElement::Sanov(w.pow(j)),
        }
    }

    /// `S T S^-1` for `S = self`.
    pub fn conjugate(&self, t: &DeckElement) -> Result<DeckElement> {
        self.compose(t)?.compose(&self.inverse())
    }

    pub fn isometry(&self) -> Isometry {
        match self {
            DeckElement::Torus { a, b } => Isometry::Affine {
                flip: false,
                tx: *a as f64,
                ty: *b as f64,
            },
            DeckElement::Klein { m, n } => {
                let s = klein_sign(*m);
                Isometry::Affine {
                    flip: s < 0,
                    tx: *m as f64,
                    ty: (s * n) as f64,
                }
            }
            DeckElement::Sanov(w) => {
                let [a, b, c, d] = w.matrix();
                Isometry::Mobius([a as f64, b as f64, c as f64, d as f64])
            }
        }
    }

    pub fn apply_point(&self, p: Point) -> Point {
        self.isometry().apply_point(p)
    }

    pub fn apply_vector(&self, p: Point, v: Direction) -> Direction {
        self.isometry().apply_vector(p, v)
    }

    /// Orientation character `w`.
    pub fn orientation_w(&self) -> i32 {
        match self {
            DeckElement::Klein { m, .. } => klein_sign(*m) as i32,
            _ => 1,
        }
    }

    /// Trace of the Sanov matrix; `None` for the Euclidean groups.
    pub fn trace(&self) -> Option<i64> {
        match self {
            DeckElement::Sanov(w) => {
                let m = w.matrix();
                Some(m[0] + m[3])
            }
            _ => None,
        }
    }

    pub fn is_parabolic(&self) -> bool {
        !self.is_identity() && self.trace().is_some_and(|t| t.abs() == 2)
    }

    /// Parses a holonomy in the textual form used by the CLI (`a,b` or a word).
    pub fn parse(kind: GroupKind, s: &str) -> Result<DeckElement> {
        match kind {
            GroupKind::Torus | GroupKind::Klein => {
                let parts: Vec<&str> = s
                    .trim()
                    .trim_matches(|c| c == '(' || c == ')' || c == '[' || c == ']')
                    .split(',')
                    .collect();
                if parts.len() != 2 {
                    return Err(Error::Parse(format!("expected an integer pair, got {s:?}")));
                }
                let x: i64 = parts[0]
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad integer in {s:?}")))?;
                let y: i64 = parts[1]
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad integer in {s:?}")))?;
                Ok(if kind == GroupKind::Torus {
                    DeckElement::torus(x, y)
                } else {
                    DeckElement::klein(x, y)
                })
            }
            GroupKind::Sanov => Ok(DeckElement::Sanov(s.parse()?)),
        }
    }
}

impl fmt::Display for DeckElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeckElement::Torus { a, b } => write!(f, "({a},{b})"),
            DeckElement::Klein { m, n } => write!(f, "({m},{n})"),
            DeckElement::Sanov(w) if w.is_empty() => write!(f, "id"),
            DeckElement::Sanov(w) => write!(f, "{w}"),
        }
    }
}

/// Serializes as `[a, b]` for the Euclidean groups and as a word string for Sanov,
/// the same form used by curve files.
impl Serialize for DeckElement {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match self {
            DeckElement::Torus { a: x, b: y } | DeckElement::Klein { m: x, n: y } => {
                [*x, *y].serialize(serializer)
            }
            DeckElement::Sanov(w) => w.to_string().serialize(serializer),
        }
    }
}

fn same_group(x: &DeckElement, y: &DeckElement) -> Result<()> {
    if x.group() == y.group() {
        Ok(())
    } else {
        Err(Error::MixedGroups)
    }
}

/// The unique `j` with `t = t0^j`, if any.
pub fn cyclic_power(t: &DeckElement, t0: &DeckElement) -> Result<Option<i64>> {
    same_group(t, t0)?;
    if t0.is_identity() {
        return Err(Error::IdentityHolonomy);
    }
    if t.is_identity() {
        return Ok(Some(0));
    }
    let j = match (t, t0) {
        (DeckElement::Torus { a, b }, DeckElement::Torus { a: a0, b: b0 }) => {
            if *a0 != 0 {
                (a % a0 == 0).then(|| a / a0)
            } else {
                (b % b0 == 0).then(|| b / b0)
            }
        }
        (DeckElement::Klein { m, n }, DeckElement::Klein { m: m0, n: n0 }) => {
            if *m0 != 0 {
                (m % m0 == 0).then(|| m / m0)
            } else {
                (*m == 0 && n % n0 == 0).then(|| n / n0)
            }
        }
        (DeckElement::Sanov(w), DeckElement::Sanov(w0)) => {
            let (u, c) = w0.cyclic_reduction();
            let extra = w.len() as i64 - 2 * u.len() as i64;
            let cl = c.len() as i64;
            if extra <= 0 || extra % cl != 0 {
                None
            } else {
                let k = extra / cl;
                [k, -k].into_iter().find(|&j| &w0.pow(j) == w)
            }
        }
        _ => unreachable!(),
    };
    Ok(j.filter(|&j| &t0.pow(j) == t))
}

/// Whether `t0` commutes with some orientation-reversing element, with a witness.
pub fn is_reversible(t0: &DeckElement) -> Result<(bool, Option<DeckElement>)> {
    match t0 {
        DeckElement::Klein { m, n } => {
            if t0.is_identity() {
                return Err(Error::IdentityHolonomy);
            }
            if klein_sign(*m) < 0 {
                // an orientation-reversing element commutes with itself
                Ok((true, Some(t0.clone())))
            } else if *n == 0 {
                Ok((true, Some(DeckElement::klein(1, 0))))
            } else {
                Ok((false, None))
            }
        }
        _ => Err(Error::OrientableGroup),
    }
}

/// Some `S` with `S t0 S^-1 = t`.
///
/// Closed forms are used for all three groups (cyclic reduction in the free
/// group), so `bound` only caps the word length of a Sanov answer.
pub fn conjugator_search(
    t: &DeckElement,
    t0: &DeckElement,
    bound: usize,
) -> Result<Option<DeckElement>> {
    same_group(t, t0)?;
    let s = match (t, t0) {
        (DeckElement::Torus { .. }, DeckElement::Torus { .. }) => {
            (t == t0).then(|| GroupKind::Torus.identity())
        }
        (DeckElement::Klein { m, n }, DeckElement::Klein { m: m0, n: n0 }) => {
            if m != m0 {
                None
            } else if klein_sign(*m0) > 0 {
                if n == n0 {
                    Some(DeckElement::klein(0, 0))
                } else if *n == -n0 {
                    Some(DeckElement::klein(1, 0))
                } else {
                    None
                }
            } else if (n0 - n).rem_euclid(2) == 0 {
                Some(DeckElement::klein(0, (n0 - n) / 2))
            } else {
                None
            }
        }
        (DeckElement::Sanov(w), DeckElement::Sanov(w0)) => {
            let (a, c1) = w.cyclic_reduction();
            let (b, c0) = w0.cyclic_reduction();
            if c1.len() != c0.len() {
                None
            } else {
                let l = c0.letters();
                (0..l.len().max(1)).find_map(|k| {
                    let rotated: Vec<_> = l[k..].iter().chain(&l[..k]).copied().collect();
                    (rotated == c1.letters()).then(|| {
                        let x = FreeWord::new(&l[..k]);
                        DeckElement::Sanov(a.mul(&x.inverse()).mul(&b.inverse()))
                    })
                })
            }
        }
        _ => unreachable!(),
    };
    Ok(s.filter(|s| match s {
        DeckElement::Sanov(w) => w.len() <= bound,
        _ => true,
    }))
}

/// Every conjugator `S` with `S t0 S^-1 = t` among group elements of size at
/// most `bound` (coordinates for the Euclidean groups, word length for Sanov).
pub fn conjugators_within(
    t: &DeckElement,
    t0: &DeckElement,
    bound: i64,
) -> Result<Vec<DeckElement>> {
    same_group(t, t0)?;
    let candidates: Vec<DeckElement> = match t0.group() {
        GroupKind::Torus => grid(bound).map(|(p, q)| DeckElement::torus(p, q)).collect(),
        GroupKind::Klein => grid(bound).map(|(p, q)| DeckElement::klein(p, q)).collect(),
        GroupKind::Sanov => FreeWord::all_up_to(bound.max(0) as usize)
            .into_iter()
            .map(DeckElement::Sanov)
            .collect(),
    };
    Ok(candidates
        .into_iter()
        .filter(|s| s.conjugate(t0).is_ok_and(|x| &x == t))
        .collect())
}

fn grid(bound: i64) -> impl Iterator<Item = (i64, i64)> {
    (-bound..=bound).flat_map(move |p| (-bound..=bound).map(move |q| (p, q)))
}

/// Hyperbolic disk `(center, radius)` containing a box of the half-plane.
///
/// Hyperbolic disks are Euclidean disks, hence convex, so containing the four
/// corners suffices.
pub fn disk_around(b: &Aabb) -> (Point, f64) {
    let ymin = b.min.y.max(1e-300);
    let c = Point::new(0.5 * (b.min.x + b.max.x), (ymin * b.max.y).sqrt());
    let r = b
        .corners()
        .iter()
        .map(|&p| hyperbolic::dist(c, Point::new(p.x, p.y.max(ymin))))
        .fold(0.0, f64::max);
    (c, r)
}

/// Deck elements `T` with `T(box2)` overlapping `box1`.
///
/// Complete for the Euclidean groups. For Sanov both boxes are enclosed in
/// hyperbolic disks and the list is complete among words of length at most
/// `word_bound` (a conservative superset of the true overlaps).
pub fn enumerate_overlapping(
    kind: GroupKind,
    box1: &Aabb,
    box2: &Aabb,
    word_bound: usize,
) -> Vec<DeckElement> {
    let int_range = |lo: f64, hi: f64| (lo.ceil() as i64)..=(hi.floor() as i64);
    match kind {
        GroupKind::Torus => {
            let mut out = Vec::new();
            for a in int_range(box1.min.x - box2.max.x, box1.max.x - box2.min.x) {
                for b in int_range(box1.min.y - box2.max.y, box1.max.y - box2.min.y) {
                    out.push(DeckElement::torus(a, b));
                }
            }
            out
        }
        GroupKind::Klein => {
            let mut out = Vec::new();
            for m in int_range(box1.min.x - box2.max.x, box1.max.x - box2.min.x) {
                let ns = if klein_sign(m) > 0 {
                    int_range(box1.min.y - box2.max.y, box1.max.y - box2.min.y)
                } else {
                    // image y-range is [-(Y1 + n), -(Y0 + n)]
                    int_range(-box2.max.y - box1.max.y, -box2.min.y - box1.min.y)
                };
                for n in ns {
                    out.push(DeckElement::klein(m, n));
                }
            }
            out
        }
        GroupKind::Sanov => {
            let (c1, r1) = disk_around(box1);
            let (c2, r2) = disk_around(box2);
            let reach = r1 + r2;
            let mut out = Vec::new();
            let mut stack: Vec<(Vec<word::Letter>, word::IntMatrix)> =
                vec![(Vec::new(), word::IDENTITY_MATRIX)];
            while let Some((letters, m)) = stack.pop() {
                let iso = Isometry::Mobius([m[0] as f64, m[1] as f64, m[2] as f64, m[3] as f64]);
                if hyperbolic::dist(c1, iso.apply_point(c2)) <= reach {
                    out.push(DeckElement::Sanov(FreeWord::new(&letters)));
                }
                if letters.len() < word_bound {
                    for l in word::LETTERS {
                        if letters.last() == Some(&-l) {
                            continue;
                        }
                        let mut next = letters.clone();
                        next.push(l);
                        stack.push((next, word::mat_mul(&m, &word::letter_matrix(l))));
                    }
                }
            }
            out.sort_by(|a, b| match (a, b) {
                (DeckElement::Sanov(x), DeckElement::Sanov(y)) => (x.len(), x).cmp(&(y.len(), y)),
                _ => unreachable!(),
            });
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn klein_composition_examples() {
        assert_eq!(
            DeckElement::klein(1, 0)
                .compose(&DeckElement::klein(1, 0))
                .unwrap(),
            DeckElement::klein(2, 0)
        );
        assert_eq!(
            DeckElement::klein(1, 2)
                .compose(&DeckElement::klein(1, 3))
                .unwrap(),
            DeckElement::klein(2, 1)
        );
        assert_eq!(
            DeckElement::klein(1, 5).inverse(),
            DeckElement::klein(-1, 5)
        );
    }

    #[test]
    fn mixed_groups_rejected() {
        assert!(matches!(
            DeckElement::torus(1, 0).compose(&DeckElement::klein(1, 0)),
            Err(Error::MixedGroups)
        ));
    }

    #[test]
    fn orientation_examples() {
        assert_eq!(DeckElement::klein(1, 0).orientation_w(), -1);
        assert_eq!(DeckElement::klein(2, 7).orientation_w(), 1);
        assert_eq!(DeckElement::torus(3, -4).orientation_w(), 1);
    }

    #[test]
    fn cyclic_power_examples() {
        assert_eq!(
            cyclic_power(&DeckElement::torus(3, 0), &DeckElement::torus(1, 0)).unwrap(),
            Some(3)
        );
        assert_eq!(
            cyclic_power(&DeckElement::klein(0, -2), &DeckElement::klein(0, 1)).unwrap(),
            Some(-2)
        );
        assert_eq!(
            cyclic_power(&DeckElement::klein(1, 0), &DeckElement::klein(2, 0)).unwrap(),
            None
        );
        assert!(matches!(
            cyclic_power(&DeckElement::klein(1, 0), &DeckElement::klein(0, 0)),
            Err(Error::IdentityHolonomy)
        ));
        // odd-m holonomy: powers alternate the B-exponent
        let t0 = DeckElement::klein(1, 3);
        assert_eq!(
            cyclic_power(&DeckElement::klein(2, 0), &t0).unwrap(),
            Some(2)
        );
        assert_eq!(
            cyclic_power(&DeckElement::klein(-1, 3), &t0).unwrap(),
            Some(-1)
        );
        assert_eq!(cyclic_power(&DeckElement::klein(2, 3), &t0).unwrap(), None);
    }

    #[test]
    fn sanov_cyclic_power_with_conjugated_holonomy() {
        let t0 = DeckElement::sanov(&[2, 1, 1, -2]);
        assert_eq!(cyclic_power(&t0.pow(3), &t0).unwrap(), Some(3));
        assert_eq!(cyclic_power(&t0.pow(-2), &t0).unwrap(), Some(-2));
        assert_eq!(
            cyclic_power(&DeckElement::sanov(&[1, 1]), &t0).unwrap(),
            None
        );
        // g1^2 is not a power of g1^4 even though g1^4 is a power of it
        assert_eq!(
            cyclic_power(
                &DeckElement::sanov(&[1, 1]),
                &DeckElement::sanov(&[1, 1, 1, 1])
            )
            .unwrap(),
            None
        );
    }

    #[test]
    fn reversibility_examples() {
        assert_eq!(
            is_reversible(&DeckElement::klein(2, 0)).unwrap(),
            (true, Some(DeckElement::klein(1, 0)))
        );
        assert_eq!(
            is_reversible(&DeckElement::klein(0, 3)).unwrap(),
            (false, None)
        );
        assert_eq!(
            is_reversible(&DeckElement::klein(4, 1)).unwrap(),
            (false, None)
        );
        assert!(matches!(
            is_reversible(&DeckElement::torus(1, 0)),
            Err(Error::OrientableGroup)
        ));
    }

    #[test]
    fn conjugator_examples() {
        assert_eq!(
            conjugator_search(&DeckElement::torus(1, 0), &DeckElement::torus(1, 0), 3).unwrap(),
            Some(DeckElement::torus(0, 0))
        );
        assert_eq!(
            conjugator_search(&DeckElement::klein(0, -1), &DeckElement::klein(0, 1), 3).unwrap(),
            Some(DeckElement::klein(1, 0))
        );
        assert_eq!(
            conjugator_search(&DeckElement::klein(0, 2), &DeckElement::klein(0, 1), 3).unwrap(),
            None
        );
    }

    #[test]
    fn sanov_conjugator_is_exact() {
        let t0 = DeckElement::sanov(&[1, 2, 2]);
        let s = DeckElement::sanov(&[-2, 1, -2]);
        let t = s.conjugate(&t0).unwrap();
        let found = conjugator_search(&t, &t0, usize::MAX).unwrap().unwrap();
        assert_eq!(found.conjugate(&t0).unwrap(), t);
        assert_eq!(
            conjugator_search(&DeckElement::sanov(&[1, 2]), &t0, usize::MAX).unwrap(),
            None
        );
    }

    #[test]
    fn torus_overlap_enumeration() {
        let b = Aabb::new(0.0, 0.0, 1.0, 1.0);
        let got = enumerate_overlapping(GroupKind::Torus, &b, &b, 0);
        assert_eq!(got.len(), 9);
        assert!(got
            .iter()
            .all(|t| matches!(t, DeckElement::Torus { a, b } if a.abs() <= 1 && b.abs() <= 1)));
    }

    #[test]
    fn klein_overlap_enumeration_is_exact() {
        let b = Aabb::new(0.0, 0.0, 1.0, 1.0);
        let got = enumerate_overlapping(GroupKind::Klein, &b, &b, 0);
        assert!(got.contains(&DeckElement::klein(1, -1)));
        // brute force over a window, using corner images
        for m in -4..=4 {
            for n in -4..=4 {
                let t = DeckElement::klein(m, n);
                let mut img = Aabb::from_point(t.apply_point(b.min));
                for c in b.corners() {
                    img.include(t.apply_point(c));
                }
                assert_eq!(img.overlaps(&b), got.contains(&t), "{t}");
            }
        }
    }

    #[test]
    fn sanov_enumeration_trivial_bound() {
        let b = Aabb::new(0.0, 1.0, 1.0, 2.0);
        assert_eq!(
            enumerate_overlapping(GroupKind::Sanov, &b, &b, 0),
            vec![GroupKind::Sanov.identity()]
        );
    }

    #[test]
    fn klein_action_matches_generators() {
        let a = |p: Point| Point::new(p.x + 1.0, -p.y);
        let b_inv = |p: Point| Point::new(p.x, p.y - 1.0);
        let p = Point::new(0.3, -0.7);
        // A^2 B^-1
        let q = a(a(b_inv(p)));
        assert_eq!(DeckElement::klein(2, -1).apply_point(p), q);
    }

    #[test]
    fn mobius_derivative_direction() {
        let t = DeckElement::sanov(&[1, 2]);
        let p = Point::new(0.2, 0.9);
        let v = Direction::from_angle(0.7);
        let h = 1e-7;
        let q0 = t.apply_point(p);
        let q1 = t.apply_point(p + v.as_point() * h);
        let fd = Direction::new(q1.x - q0.x, q1.y - q0.y).unwrap();
        let w = t.apply_vector(p, v);
        assert!(fd.dot(w) > 1.0 - 1e-9);
    }

    #[test]
    fn parse_holonomy() {
        assert_eq!(
            DeckElement::parse(GroupKind::Klein, "2,0").unwrap(),
            DeckElement::klein(2, 0)
        );
        assert_eq!(
            DeckElement::parse(GroupKind::Sanov, "g1 g2").unwrap(),
            DeckElement::sanov(&[1, 2])
        );
        assert!(DeckElement::parse(GroupKind::Torus, "1").is_err());
    }
}
