//! Winding-number invariants: signed double-point sums in the cover, the
//! homology and fundamental-group counts, the null-homotopic Whitney index,
//! and the direction-degree oracle for Euclidean surfaces.

use std::fmt;

use serde::Serialize;

use crate::curve::{double_points, loop_classes_at, CurveOnSurface, DoublePointEvent, EventKind};
use crate::deck::{conjugator_search, is_reversible, DeckElement, GroupKind};
use crate::error::{Error, Result};
use crate::geometry::{crossing_sign, turning_degree, Direction, Kernel};
use crate::tolerance::Tolerance;

/// Which formula applies, decided by the holonomy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Case {
    NullHomotopic,
    Orientable,
    OrReversing,
    OpReversible,
    OpNonreversible,
}

impl Case {
    pub fn name(self) -> &'static str {
        match self {
            Case::NullHomotopic => "null_homotopic",
            Case::Orientable => "orientable",
            Case::OrReversing => "or_reversing",
            Case::OpReversible => "op_reversible",
            Case::OpNonreversible => "op_nonreversible",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Case and value of the winding number of a curve.
///
/// `value` lies in `Z` (null-homotopic orientable, orientable,
/// op-nonreversible), `Z/2` as `0`/`1` (or-reversing) or `Z+`
/// (op-reversible, null-homotopic on a non-orientable surface).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantReport {
    pub case: Case,
    pub value: i64,
    /// Signed sum over the `D±` events of the given cover.
    pub i_cover_raw: i64,
    pub d0_count: usize,
    pub dpm_count: usize,
    /// Reference holonomy used to normalize the cover (op-nonreversible only).
    pub reference: Option<DeckElement>,
}

impl fmt::Display for InvariantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "case: {}", self.case)?;
        writeln!(f, "value: {}", self.value)?;
        writeln!(f, "i_cover_raw: {}", self.i_cover_raw)?;
        writeln!(f, "d0_count: {}", self.d0_count)?;
        writeln!(f, "dpm_count: {}", self.dpm_count)?;
        match &self.reference {
            Some(r) => writeln!(f, "reference: {r}"),
            None => writeln!(f, "reference: none"),
        }
    }
}

/// The case of a holonomy, from `(orientation_w(T0), is_reversible(T0))`.
pub fn case_of(t0: &DeckElement) -> Case {
    if t0.is_identity() {
        Case::NullHomotopic
    } else if t0.group().is_orientable() {
        Case::Orientable
    } else if t0.orientation_w() < 0 {
        Case::OrReversing
    } else if is_reversible(t0).map(|r| r.0).unwrap_or(false) {
        Case::OpReversible
    } else {
        Case::OpNonreversible
    }
}

/// Canonical representative of the conjugacy class of `t0` used as the
/// default reference cover: Klein `A^m B^n` with `m` even becomes
/// `A^m B^|n|`, everything else is returned unchanged.
pub fn canonical_reference(t0: &DeckElement) -> DeckElement {
    match t0 {
        DeckElement::Klein { m, n } if m.rem_euclid(2) == 0 => DeckElement::klein(*m, n.abs()),
        _ => t0.clone(),
    }
}

/// Cover parameters `(u1, u2)`, `u1 < u2`, of the cover self-intersection
/// realizing a `D±` event of power `j`: `min/max(t, s + j)`.
pub fn cover_parameters(e: &DoublePointEvent) -> Option<(f64, f64)> {
    match e.kind {
        EventKind::D0 => None,
        EventKind::Dpm(j) => {
            let sj = e.s + j as f64;
            Some((e.t.min(sj), e.t.max(sj)))
        }
    }
}

/// Sign of a double point for the chosen cover: `0` for `D0`, otherwise the
/// crossing sign at the cover parameters `u1 < u2` of [`cover_parameters`].
pub fn sign_of_event(c: &CurveOnSurface, e: &DoublePointEvent, tol: &Tolerance) -> Result<i32> {
    let j = match e.kind {
        EventKind::D0 => return Ok(0),
        EventKind::Dpm(j) => j,
    };
    let arc_s = &c.arcs()[e.seg_s.0];
    let v_s = arc_s.tangent_at(e.seg_s.1);
    let v_sj = if j == 0 {
        v_s
    } else {
        c.holonomy()
            .pow(j)
            .apply_vector(arc_s.point_at(e.seg_s.1), v_s)
    };
    let v_t = c.arcs()[e.seg_t.0].tangent_at(e.seg_t.1);
    if e.t < e.s + j as f64 {
        crossing_sign(v_t, v_sj, tol.eps)
    } else {
        crossing_sign(v_sj, v_t, tol.eps)
    }
}

fn signed_sum(c: &CurveOnSurface, events: &[DoublePointEvent], tol: &Tolerance) -> Result<i64> {
    let mut sum = 0i64;
    for e in events {
        sum += sign_of_event(c, e, tol)? as i64;
    }
    Ok(sum)
}

fn counts(events: &[DoublePointEvent]) -> (usize, usize) {
    let dpm = events.iter().filter(|e| e.kind.is_dpm()).count();
    (events.len() - dpm, dpm)
}

/// `i_γ̃(γ)`: the signed count of `D±` events for the chosen cover.
pub fn i_cover(c: &CurveOnSurface, tol: &Tolerance) -> Result<i64> {
    if c.holonomy().orientation_w() < 0 {
        return Err(Error::OrientationReversingHolonomy);
    }
    signed_sum(c, &double_points(c, tol)?, tol)
}

/// Winding number on an orientable surface (torus or Sanov).
pub fn invariant_orientable(c: &CurveOnSurface, tol: &Tolerance) -> Result<i64> {
    if !c.group().is_orientable() {
        return Err(Error::WrongCase("surface is not orientable".into()));
    }
    if c.is_null_homotopic() {
        return Err(Error::NullHomotopic);
    }
    i_cover(c, tol)
}

/// Winding number mod 2 for orientation-reversing holonomy: `|D±| mod 2`.
pub fn invariant_or_reversing(c: &CurveOnSurface, tol: &Tolerance) -> Result<i64> {
    if c.group() != GroupKind::Klein || c.holonomy().orientation_w() > 0 {
        return Err(Error::WrongCase(
            "needs orientation-reversing holonomy on the Klein bottle".into(),
        ));
    }
    let (_, dpm) = counts(&double_points(c, tol)?);
    Ok((dpm % 2) as i64)
}

fn require_op_klein(c: &CurveOnSurface) -> Result<()> {
    if c.group() != GroupKind::Klein || c.holonomy().orientation_w() < 0 {
        return Err(Error::WrongCase(
            "needs orientation-preserving holonomy on the Klein bottle".into(),
        ));
    }
    if c.is_null_homotopic() {
        return Err(Error::NullHomotopic);
    }
    Ok(())
}

/// `|i_γ̃(γ)|` for a reversible orientation-preserving class; independent of the cover.
pub fn invariant_op_reversible(c: &CurveOnSurface, tol: &Tolerance) -> Result<i64> {
    require_op_klein(c)?;
    if !is_reversible(c.holonomy())?.0 {
        return Err(Error::NotReversible);
    }
    Ok(i_cover(c, tol)?.abs())
}

/// `i_cover` of the cover whose holonomy is `reference`.
///
/// The cover is moved by some `S` with `S T0 S^-1 = reference`; any two such
/// `S` differ by a centralizer element, which preserves orientation because
/// the class is not reversible, so the value does not depend on the choice.
pub fn invariant_op_nonreversible(
    c: &CurveOnSurface,
    reference: &DeckElement,
    tol: &Tolerance,
) -> Result<i64> {
    require_op_klein(c)?;
    if is_reversible(c.holonomy())?.0 {
        return Err(Error::ReversibleClass);
    }
    let s = conjugator_search(reference, c.holonomy(), usize::MAX)
        .map_err(|_| Error::NotConjugate(reference.to_string()))?
        .ok_or_else(|| Error::NotConjugate(reference.to_string()))?;
    i_cover(&c.change_cover(&s)?, tol)
}

/// The class of a loop vanishes in `H_1` (torus pair, Sanov abelianization).
fn homologically_trivial(g: &DeckElement) -> bool {
    match g {
        DeckElement::Sanov(w) => w.abelianization() == (0, 0),
        _ => g.is_identity(),
    }
}

fn left_right_count(
    c: &CurveOnSurface,
    tol: &Tolerance,
    trivial: impl Fn(&DeckElement) -> bool,
) -> Result<i64> {
    let mut total = 0;
    for e in &double_points(c, tol)? {
        let (g1, g2, left_first) = loop_classes_at(c, e, tol)?;
        let (left, right) = if left_first { (g1, g2) } else { (g2, g1) };
        total += trivial(&left) as i64 - trivial(&right) as i64;
    }
    Ok(total)
}

/// `t(γ)`: double points whose left-returning loop is zero in `H_1`, minus
/// those whose right-returning loop is.
pub fn tanio_kobayashi_t(c: &CurveOnSurface, tol: &Tolerance) -> Result<i64> {
    if !c.group().is_orientable() {
        return Err(Error::NonOrientable);
    }
    left_right_count(c, tol, homologically_trivial)
}

/// `I(γ)`: as [`tanio_kobayashi_t`] with null-homotopy in place of zero homology.
pub fn pi1_i(c: &CurveOnSurface, tol: &Tolerance) -> Result<i64> {
    if c.is_null_homotopic() {
        return Err(Error::NullHomotopic);
    }
    left_right_count(c, tol, DeckElement::is_identity)
}

/// `D±` events with power outside `{0, 1}`: there the cover count and the
/// loop count of [`pi1_i`] are different predicates.
pub fn pi1_discrepancies(c: &CurveOnSurface, tol: &Tolerance) -> Result<Vec<DoublePointEvent>> {
    Ok(double_points(c, tol)?
        .into_iter()
        .filter(|e| matches!(e.kind, EventKind::Dpm(j) if j != 0 && j != 1))
        .collect())
}

/// Tangent directions along the window, closed through the seam when the
/// holonomy acts trivially on directions.
fn window_directions(c: &CurveOnSurface) -> Vec<Direction> {
    match c.kernel() {
        Kernel::Euclid => c.arcs().iter().map(|a| a.tangent_at(0.0)).collect(),
        // geodesic arcs rotate in the model; sample each one
        Kernel::Hyperbolic => c
            .arcs()
            .iter()
            .flat_map(|a| [a.tangent_at(0.0), a.tangent_at(0.5), a.tangent_at(1.0)])
            .collect(),
    }
}

/// Whitney index of a null-homotopic curve: the turning degree of its closed
/// lift, in absolute value on a non-orientable surface.
pub fn whitney_index_nullhomotopic(c: &CurveOnSurface, tol: &Tolerance) -> Result<i64> {
    if !c.is_null_homotopic() {
        return Err(Error::NotNullHomotopic);
    }
    let deg = turning_degree(&window_directions(c), tol.eps)?;
    Ok(if c.group().is_orientable() {
        deg
    } else {
        deg.abs()
    })
}

/// Rotation number of the cover over one period, for Euclidean curves whose
/// holonomy acts trivially on directions (torus; Klein with `m` even).
pub fn direction_degree_oracle(c: &CurveOnSurface, tol: &Tolerance) -> Result<i64> {
    if c.kernel() != Kernel::Euclid || !c.holonomy().isometry().has_trivial_differential() {
        return Err(Error::NonTrivialDifferential);
    }
    turning_degree(&window_directions(c), tol.eps)
}

/// Detects the case and evaluates the matching invariant.
///
/// `reference` is required for the op-nonreversible case and ignored otherwise.
pub fn compute_invariant(
    c: &CurveOnSurface,
    reference: Option<&DeckElement>,
    tol: &Tolerance,
) -> Result<InvariantReport> {
    let events = double_points(c, tol)?;
    let (d0_count, dpm_count) = counts(&events);
    let raw = signed_sum(c, &events, tol)?;
    let case = case_of(c.holonomy());
    let mut used = None;
    let value = match case {
        Case::NullHomotopic => whitney_index_nullhomotopic(c, tol)?,
        Case::Orientable => raw,
        Case::OrReversing => (dpm_count % 2) as i64,
        Case::OpReversible => raw.abs(),
        Case::OpNonreversible => {
            let r = reference.ok_or_else(|| {
                Error::WrongCase(format!(
                    "holonomy {} is orientation-preserving and not reversible; a reference holonomy is required",
                    c.holonomy()
                ))
            })?;
            used = Some(r.clone());
            invariant_op_nonreversible(c, r, tol)?
        }
    };
    Ok(InvariantReport {
        case,
        value,
        i_cover_raw: raw,
        d0_count,
        dpm_count,
        reference: used,
    })
}

/// Violations of `sgn(S∘γ̃, S d̃) = w(S) sgn(γ̃, d̃)` over the `D±` events.
pub fn equivariance_violations(
    c: &CurveOnSurface,
    s: &DeckElement,
    tol: &Tolerance,
) -> Result<Vec<String>> {
    let moved = c.change_cover(s)?;
    let before = double_points(c, tol)?;
    let after = double_points(&moved, tol)?;
    let w = s.orientation_w();
    let mut bad = Vec::new();
    for e in before.iter().filter(|e| e.kind.is_dpm()) {
        // the same pair of arcs, since a change of cover keeps the parametrization
        let Some(f) = after
            .iter()
            .find(|f| (f.seg_s.0, f.seg_t.0) == (e.seg_s.0, e.seg_t.0))
        else {
            bad.push(format!(
                "event ({:.9}, {:.9}) missing after change of cover by {s}",
                e.s, e.t
            ));
            continue;
        };
        let (a, b) = (sign_of_event(c, e, tol)?, sign_of_event(&moved, f, tol)?);
        if f.kind != e.kind || b != w * a {
            bad.push(format!(
                "event ({:.9}, {:.9}): sign {a} became {b} under {s} (w = {w})",
                e.s, e.t
            ));
        }
    }
    Ok(bad)
}

/// Violations of `sgn(γ̃, T0 d̃) = w(T0) sgn(γ̃, d̃)`: each `D±` cover double
/// point is compared with its image at parameters shifted by one period.
pub fn periodicity_violations(c: &CurveOnSurface, tol: &Tolerance) -> Result<Vec<String>> {
    let w = c.holonomy().orientation_w();
    let mut bad = Vec::new();
    for e in double_points(c, tol)?.iter() {
        let Some((u1, u2)) = cover_parameters(e) else {
            continue;
        };
        let sign = sign_of_event(c, e, tol)?;
        let (p1, p2) = (c.cover_point(u1 + 1.0), c.cover_point(u2 + 1.0));
        let scale = 1.0 + p1.x.abs().max(p1.y.abs());
        if p1.dist(p2) > 1e-6 * scale {
            bad.push(format!(
                "event ({:.9}, {:.9}): shifted cover points differ by {:e}",
                e.s,
                e.t,
                p1.dist(p2)
            ));
            continue;
        }
        let shifted = crossing_sign(
            c.cover_tangent(u1 + 1.0),
            c.cover_tangent(u2 + 1.0),
            tol.eps,
        )?;
        if shifted != w * sign {
            bad.push(format!(
                "event ({:.9}, {:.9}): sign {sign}, shifted {shifted}, w = {w}",
                e.s, e.t
            ));
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{add_kink, geodesic_representative, perturb};
    use crate::geometry::Point;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    /// Geodesic representative with kinks near the given parameters of the
    /// unkinked curve; translation classes are moved off the invariant line.
    fn kinked(t0: DeckElement, n: usize, kinks: &[(f64, i32)]) -> CurveOnSurface {
        let mut c = geodesic_representative(&t0, n).unwrap();
        if let DeckElement::Klein { m, .. } = t0 {
            if m % 2 == 0 && m != 0 {
                let v = c
                    .vertices()
                    .iter()
                    .map(|p| Point::new(p.x, p.y + 0.25))
                    .collect();
                c = CurveOnSurface::new(t0.clone(), v).unwrap();
            }
        }
        let mut at: Vec<(usize, i32)> = kinks.iter().map(|&(u, o)| (c.locate(u).1, o)).collect();
        at.sort_by_key(|a| std::cmp::Reverse(a.0));
        for (seg, o) in at {
            let r = (0.15 * c.arcs()[seg].length()).min(0.02);
            c = add_kink(&c, c.param(seg, 0.45), o, r, &tol()).unwrap();
        }
        c
    }

    #[test]
    fn torus_geodesic_values() {
        let c = perturb(
            &geodesic_representative(&DeckElement::torus(1, 0), 8).unwrap(),
            0.01,
            3,
            &tol(),
        )
        .unwrap();
        assert_eq!(i_cover(&c, &tol()).unwrap(), 0);
        assert_eq!(invariant_orientable(&c, &tol()).unwrap(), 0);
        assert_eq!(tanio_kobayashi_t(&c, &tol()).unwrap(), 0);
        assert_eq!(direction_degree_oracle(&c, &tol()).unwrap(), 0);
    }

    #[test]
    fn positive_kinks_count() {
        let c = kinked(
            DeckElement::torus(1, 0),
            4,
            &[(0.05, 1), (0.3, 1), (0.55, 1)],
        );
        let ev = double_points(&c, &tol()).unwrap();
        assert_eq!(ev.len(), 3);
        for e in &ev {
            assert_eq!(sign_of_event(&c, e, &tol()).unwrap(), 1);
        }
        assert_eq!(invariant_orientable(&c, &tol()).unwrap(), 3);
        assert_eq!(direction_degree_oracle(&c, &tol()).unwrap(), 3);
        assert_eq!(tanio_kobayashi_t(&c, &tol()).unwrap(), 3);
        assert_eq!(pi1_i(&c, &tol()).unwrap(), 3);
    }

    #[test]
    fn sanov_negative_kink() {
        let c = kinked(DeckElement::sanov(&[1, 2]), 16, &[(0.4, -1)]);
        assert_eq!(invariant_orientable(&c, &tol()).unwrap(), -1);
        assert_eq!(pi1_i(&c, &tol()).unwrap(), -1);
    }

    #[test]
    fn or_reversing_parity() {
        let c = geodesic_representative(&DeckElement::klein(1, 0), 4).unwrap();
        assert_eq!(invariant_or_reversing(&c, &tol()).unwrap(), 0);
        let one = add_kink(&c, c.param(0, 0.45), 1, 0.02, &tol()).unwrap();
        assert_eq!(invariant_or_reversing(&one, &tol()).unwrap(), 1);
        let two = add_kink(&one, one.param(one.len() - 2, 0.45), -1, 0.02, &tol()).unwrap();
        assert_eq!(invariant_or_reversing(&two, &tol()).unwrap(), 0);
        assert!(matches!(
            i_cover(&one, &tol()),
            Err(Error::OrientationReversingHolonomy)
        ));
    }

    #[test]
    fn op_reversible_cover_change() {
        let c = kinked(DeckElement::klein(2, 0), 8, &[(0.05, 1), (0.55, 1)]);
        let a = DeckElement::klein(1, 0);
        assert_eq!(i_cover(&c, &tol()).unwrap(), 2);
        let moved = c.change_cover(&a).unwrap();
        assert_eq!(i_cover(&moved, &tol()).unwrap(), -2);
        assert_eq!(invariant_op_reversible(&c, &tol()).unwrap(), 2);
        assert_eq!(invariant_op_reversible(&moved, &tol()).unwrap(), 2);
    }

    #[test]
    fn op_nonreversible_examples() {
        let b = DeckElement::klein(0, 1);
        let c = kinked(b.clone(), 4, &[(0.1, 1)]);
        assert_eq!(invariant_op_nonreversible(&c, &b, &tol()).unwrap(), 1);
        let moved = c.change_cover(&DeckElement::klein(1, 0)).unwrap();
        assert_eq!(moved.holonomy(), &DeckElement::klein(0, -1));
        assert_eq!(i_cover(&moved, &tol()).unwrap(), -1);
        assert_eq!(invariant_op_nonreversible(&moved, &b, &tol()).unwrap(), 1);
        let doubled = geodesic_representative(&DeckElement::klein(0, 2), 8).unwrap();
        let b2 = perturb(&doubled, 0.05, 1, &tol()).unwrap();
        assert!(matches!(
            invariant_op_nonreversible(&b2, &b, &tol()),
            Err(Error::NotConjugate(_))
        ));
        let rev = kinked(DeckElement::klein(2, 0), 4, &[]);
        assert!(matches!(
            invariant_op_nonreversible(&rev, &DeckElement::klein(2, 0), &tol()),
            Err(Error::ReversibleClass)
        ));
    }

    #[test]
    fn klein_direction_oracle() {
        let c = kinked(DeckElement::klein(2, 0), 8, &[(0.3, -1)]);
        assert_eq!(direction_degree_oracle(&c, &tol()).unwrap(), -1);
        let glide = geodesic_representative(&DeckElement::klein(1, 0), 2).unwrap();
        assert!(matches!(
            direction_degree_oracle(&glide, &tol()),
            Err(Error::NonTrivialDifferential)
        ));
    }

    #[test]
    fn sign_flips_under_orientation_reversing_cover_change() {
        let c = kinked(DeckElement::klein(2, 0), 8, &[(0.3, 1)]);
        let e = &double_points(&c, &tol()).unwrap()[0];
        let moved = c.change_cover(&DeckElement::klein(1, 3)).unwrap();
        let f = &double_points(&moved, &tol()).unwrap()[0];
        assert_eq!(sign_of_event(&c, e, &tol()).unwrap(), 1);
        assert_eq!(sign_of_event(&moved, f, &tol()).unwrap(), -1);
        assert!(
            equivariance_violations(&c, &DeckElement::klein(1, 3), &tol())
                .unwrap()
                .is_empty()
        );
        assert!(periodicity_violations(&c, &tol()).unwrap().is_empty());
    }

    fn square(ccw: bool, t0: DeckElement) -> CurveOnSurface {
        let mut v = vec![
            Point::new(0.2, 0.2),
            Point::new(0.6, 0.2),
            Point::new(0.6, 0.6),
            Point::new(0.2, 0.6),
        ];
        if !ccw {
            v.reverse();
        }
        CurveOnSurface::new(t0, v).unwrap()
    }

    #[test]
    fn null_homotopic_examples() {
        assert_eq!(
            whitney_index_nullhomotopic(&square(true, DeckElement::torus(0, 0)), &tol()).unwrap(),
            1
        );
        assert_eq!(
            whitney_index_nullhomotopic(&square(false, DeckElement::klein(0, 0)), &tol()).unwrap(),
            1
        );
        let eight = CurveOnSurface::new(
            DeckElement::klein(0, 0),
            vec![
                Point::new(0.1, 0.1),
                Point::new(0.5, 0.5),
                Point::new(0.5, 0.1),
                Point::new(0.1, 0.5),
            ],
        )
        .unwrap();
        assert_eq!(whitney_index_nullhomotopic(&eight, &tol()).unwrap(), 0);
        let r = compute_invariant(&eight, None, &tol()).unwrap();
        assert_eq!((r.case, r.value, r.dpm_count), (Case::NullHomotopic, 0, 1));
        assert!(matches!(
            whitney_index_nullhomotopic(
                &geodesic_representative(&DeckElement::torus(1, 0), 1).unwrap(),
                &tol()
            ),
            Err(Error::NotNullHomotopic)
        ));
    }

    #[test]
    fn case_table() {
        assert_eq!(case_of(&DeckElement::torus(0, 0)), Case::NullHomotopic);
        assert_eq!(case_of(&DeckElement::torus(1, 2)), Case::Orientable);
        assert_eq!(case_of(&DeckElement::sanov(&[1])), Case::Orientable);
        assert_eq!(case_of(&DeckElement::klein(3, 1)), Case::OrReversing);
        assert_eq!(case_of(&DeckElement::klein(2, 0)), Case::OpReversible);
        assert_eq!(case_of(&DeckElement::klein(0, 1)), Case::OpNonreversible);
        assert_eq!(
            canonical_reference(&DeckElement::klein(2, -3)),
            DeckElement::klein(2, 3)
        );
    }

    #[test]
    fn report_requires_reference_when_nonreversible() {
        let c = kinked(DeckElement::klein(0, 1), 4, &[]);
        assert!(matches!(
            compute_invariant(&c, None, &tol()),
            Err(Error::WrongCase(_))
        ));
        let r = compute_invariant(&c, Some(&DeckElement::klein(0, 1)), &tol()).unwrap();
        assert_eq!(r.case, Case::OpNonreversible);
        assert_eq!(r.reference, Some(DeckElement::klein(0, 1)));
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            json,
            r#"{"case":"op_nonreversible","value":0,"i_cover_raw":0,"d0_count":0,"dpm_count":0,"reference":[0,1]}"#
        );
    }
}
