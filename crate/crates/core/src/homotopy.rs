//! Regular-homotopy moves and randomized invariance checks.
//!
//! A regular homotopy is witnessed by a chain of validated generic curves:
//! perturbations (vertex displacements certified by sampled interpolation),
//! finger moves creating a pair of double points, and pairs of opposite kinks.

use std::f64::consts::FRAC_PI_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::curve::{
    add_kink, double_points, geodesic_representative, horocycle_representative, kink_clearance,
    perturb, CurveOnSurface, DoublePointEvent, EventKind,
};
use crate::deck::{conjugator_search, DeckElement};
use crate::error::{Error, Result};
use crate::geometry::{arc_intersection, Arc, Point};
use crate::invariants::{canonical_reference, compute_invariant, sign_of_event};
use crate::tolerance::Tolerance;

/// Which family a newly created pair of double points belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairFamily {
    BothD0,
    /// Both `D±`; the pair is well formed when the signs are opposite.
    BothDpm {
        signs: [i32; 2],
    },
    Mixed,
}

impl PairFamily {
    /// Both `D0`, or both `D±` with opposite signs.
    pub fn is_dichotomous(self) -> bool {
        match self {
            PairFamily::BothD0 => true,
            PairFamily::BothDpm { signs } => signs[0] == -signs[1],
            PairFamily::Mixed => false,
        }
    }
}

/// Result of pushing a finger of the curve across a nearby strand.
#[derive(Clone, Debug)]
pub struct FingerMove {
    pub curve: CurveOnSurface,
    pub original: CurveOnSurface,
    /// The two double points created by the move.
    pub created: Vec<DoublePointEvent>,
    pub family: PairFamily,
    /// Deck element of the strand crossed (relative to the window).
    pub strand: DeckElement,
    first: usize,
    removed: Vec<Point>,
}

impl FingerMove {
    /// The inverse move: removes the finger and restores the replaced vertices.
    pub fn retract(&self) -> Result<CurveOnSurface> {
        let v = self.curve.vertices();
        let mut out = v[..self.first].to_vec();
        out.extend_from_slice(&self.removed);
        out.extend_from_slice(&v[self.first + 3..]);
        CurveOnSurface::new(self.curve.holonomy().clone(), out)
    }
}

fn persisting(
    before: &[DoublePointEvent],
    after: &[DoublePointEvent],
    tol: f64,
) -> Option<Vec<usize>> {
    let mut used = vec![false; after.len()];
    for e in before {
        let k = (0..after.len()).find(|&k| {
            !used[k] && after[k].deck == e.deck && after[k].location.dist(e.location) < tol
        })?;
        used[k] = true;
    }
    Some((0..after.len()).filter(|&k| !used[k]).collect())
}

/// Nearest strand hit by the geodesic normal ray at `p`, on either side, within `reach`.
fn probe(
    c: &CurveOnSurface,
    seg: usize,
    frac: f64,
    reach: f64,
    tol: &Tolerance,
) -> Result<Option<(f64, f64, DeckElement)>> {
    let kernel = c.kernel();
    let arc = c.arcs()[seg];
    let p = arc.point_at(frac);
    let phi = arc.tangent_at(frac).angle();
    let mut best: Option<(f64, f64, DeckElement)> = None;
    let set = c.search_set(tol);
    for side in [1.0, -1.0] {
        let angle = phi + side * FRAC_PI_2;
        let ray = Arc::new(kernel, p, kernel.geodesic_point(p, angle, reach))?;
        let rb = ray.bbox();
        for t in &set {
            for (j, a) in c.arcs().iter().enumerate() {
                if t.is_identity() && j == seg {
                    continue;
                }
                let img = Arc::new(kernel, t.apply_point(a.a()), t.apply_point(a.b()))?;
                if !img.bbox().overlaps(&rb) {
                    continue;
                }
                // the curve itself passes through the foot of the ray
                for x in arc_intersection(&ray, &img, 0.0)?
                    .crossings
                    .into_iter()
                    .filter(|x| x.u > 1e-9)
                {
                    let d = x.u * reach;
                    if best.as_ref().is_none_or(|b| d < b.0) {
                        best = Some((d, angle, t.clone()));
                    }
                }
            }
        }
    }
    Ok(best)
}

/// Pushes a finger from the point at parameter `at` across the nearest strand
/// within `radius` (kernel units), creating exactly two double points.
pub fn birth_death_pair(
    c: &CurveOnSurface,
    at: f64,
    radius: f64,
    tol: &Tolerance,
) -> Result<FingerMove> {
    let before = double_points(c, tol)?;
    let (_, seg, frac) = c.locate(at.rem_euclid(1.0));
    let (h, angle, strand) = probe(c, seg, frac, radius, tol)?.ok_or(Error::NoNearbyStrand)?;
    let kernel = c.kernel();
    let p = c.arcs()[seg].point_at(frac);
    if h * kernel.model_scale(p) < 100.0 * tol.margin() {
        return Err(Error::TooCrowded("strand too close for a finger".into()));
    }
    let crowded = || Error::TooCrowded(format!("no room for a finger at {at}"));
    let (seg_a, frac_a) = c.walk(seg, frac, -0.8 * h).ok_or_else(crowded)?;
    let (seg_b, frac_b) = c.walk(seg, frac, 0.8 * h).ok_or_else(crowded)?;
    if !(1e-6..1.0 - 1e-6).contains(&frac_a) || !(1e-6..1.0 - 1e-6).contains(&frac_b) {
        return Err(crowded());
    }
    let apex = kernel.geodesic_point(p, angle, 1.3 * h);
    let v = c.vertices();
    let first = seg_a + 1;
    let removed = v[first..=seg_b].to_vec();
    let mut vertices = v[..first].to_vec();
    vertices.extend([
        c.arcs()[seg_a].point_at(frac_a),
        apex,
        c.arcs()[seg_b].point_at(frac_b),
    ]);
    vertices.extend_from_slice(&v[seg_b + 1..]);
    let curve = CurveOnSurface::new(c.holonomy().clone(), vertices).map_err(|_| crowded())?;
    if (curve.total_turning() - c.total_turning()).abs() > 1e-6 {
        return Err(crowded());
    }
    let after = match double_points(&curve, tol) {
        Ok(a) => a,
        Err(Error::NonGeneric(_)) => return Err(crowded()),
        Err(e) => return Err(e),
    };
    let fresh = persisting(&before, &after, tol.margin()).ok_or_else(crowded)?;
    if fresh.len() != 2 {
        return Err(crowded());
    }
    let created: Vec<DoublePointEvent> = fresh.iter().map(|&k| after[k].clone()).collect();
    let family = match (created[0].kind, created[1].kind) {
        (EventKind::D0, EventKind::D0) => PairFamily::BothD0,
        (EventKind::Dpm(_), EventKind::Dpm(_)) => PairFamily::BothDpm {
            signs: [
                sign_of_event(&curve, &created[0], tol)?,
                sign_of_event(&curve, &created[1], tol)?,
            ],
        },
        _ => PairFamily::Mixed,
    };
    Ok(FingerMove {
        curve,
        original: c.clone(),
        created,
        family,
        strand,
        first,
        removed,
    })
}

/// Adds a `+1` kink at `at` and a `-1` kink just after it on the same arc.
pub fn kink_pair(
    c: &CurveOnSurface,
    at: f64,
    radius: f64,
    tol: &Tolerance,
) -> Result<CurveOnSurface> {
    let (_, seg, _) = c.locate(at.rem_euclid(1.0));
    let one = add_kink(c, at, 1, radius, tol)?;
    // the arc after the first kink starts at its last vertex
    let next = seg + 4;
    let len = one.arcs()[next].length();
    if len < 6.0 * radius {
        return Err(Error::TooCrowded(format!(
            "no room for the second kink at {at}"
        )));
    }
    add_kink(&one, one.param(next, 3.0 * radius / len), -1, radius, tol)
}

/// One move of a random regular homotopy.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "move")]
pub enum Move {
    Perturb {
        seed: u64,
        magnitude: f64,
    },
    BirthDeath {
        at: f64,
        radius: f64,
        family: PairFamily,
    },
    KinkPair {
        at: f64,
        radius: f64,
    },
}

/// The moves applied to a curve and the event counts before and after.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct MoveTrace {
    pub moves: Vec<Move>,
    pub events_before: usize,
    pub events_after: usize,
    /// Attempts rejected for lack of room or margin (the curve was left unchanged).
    pub rejected: usize,
}

fn min_arc_length(c: &CurveOnSurface) -> f64 {
    c.arcs()
        .iter()
        .map(|a| a.length())
        .fold(f64::INFINITY, f64::min)
}

fn try_move(
    c: &CurveOnSurface,
    rng: &mut ChaCha8Rng,
    tol: &Tolerance,
) -> Result<(CurveOnSurface, Move)> {
    let roll: f64 = rng.gen();
    let at: f64 = rng.gen();
    if roll < 0.7 {
        let seed: u64 = rng.gen();
        let magnitude = min_arc_length(c) * rng.gen_range(0.05..0.3);
        let out = perturb(c, magnitude, seed, tol)?;
        Ok((out, Move::Perturb { seed, magnitude }))
    } else if roll < 0.9 {
        let radius = rng.gen_range(0.1..0.6);
        let f = birth_death_pair(c, at, radius, tol)?;
        Ok((
            f.curve,
            Move::BirthDeath {
                at,
                radius,
                family: f.family,
            },
        ))
    } else {
        let clearance = kink_clearance(c, at, tol)?;
        let radius = (clearance / 8.0).min(0.05);
        let out = kink_pair(c, at, radius, tol)?;
        Ok((out, Move::KinkPair { at, radius }))
    }
}

fn recoverable(e: &Error) -> bool {
    matches!(
        e,
        Error::TooCrowded(_) | Error::NoNearbyStrand | Error::MarginExceeded
    )
}

/// Applies `count` random moves (70% perturb, 20% finger, 10% kink pair),
/// redrawing a move when it does not fit.
pub fn random_moves(
    c: &CurveOnSurface,
    count: usize,
    seed: u64,
    tol: &Tolerance,
) -> Result<(CurveOnSurface, MoveTrace)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = c.clone();
    let mut trace = MoveTrace {
        events_before: double_points(c, tol)?.len(),
        ..MoveTrace::default()
    };
    let mut attempts = 0;
    while trace.moves.len() < count && attempts < 20 * count.max(1) {
        attempts += 1;
        match try_move(&cur, &mut rng, tol) {
            Ok((next, m)) => {
                cur = next;
                trace.moves.push(m);
            }
            Err(e) if recoverable(&e) => trace.rejected += 1,
            Err(e) => return Err(e),
        }
    }
    trace.events_after = double_points(&cur, tol)?.len();
    Ok((cur, trace))
}

fn build_base(
    t0: &DeckElement,
    min_segments: usize,
    seed: u64,
    tol: &Tolerance,
) -> Result<CurveOnSurface> {
    let mut samples = match t0 {
        DeckElement::Sanov(_) => 16,
        DeckElement::Torus { a: x, b: y } | DeckElement::Klein { m: x, n: y } => {
            (4 * (x.abs() + y.abs()) as usize).max(8).max(min_segments)
        }
    };
    let base = loop {
        let c = match t0 {
            DeckElement::Sanov(_) if t0.is_parabolic() => {
                horocycle_representative(t0, 1.0, samples)?
            }
            _ => geodesic_representative(t0, samples)?,
        };
        if c.len() >= min_segments {
            break c;
        }
        samples *= 2;
    };
    let magnitude = 0.15 * min_arc_length(&base);
    for attempt in 0..20 {
        match perturb(&base, magnitude, seed.wrapping_add(attempt), tol) {
            Ok(c) => return Ok(c),
            Err(Error::MarginExceeded) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::MarginExceeded)
}

/// A generic curve with holonomy `t0` and expected winding number `k`: a
/// perturbed geodesic (or horocycle, for parabolic holonomy) with `|k|`
/// kinks of sign `k`.
///
/// For a non-reversible Klein class the kinks are added on the canonical
/// cover (see [`canonical_reference`]) and the result is moved to holonomy
/// `t0`, so the value relative to the canonical reference is `k`.
pub fn build_w_k_curve(
    t0: &DeckElement,
    k: i64,
    seed: u64,
    tol: &Tolerance,
) -> Result<CurveOnSurface> {
    if t0.is_identity() {
        return Err(Error::IdentityHolonomy);
    }
    let canonical = canonical_reference(t0);
    if &canonical != t0 {
        let c = build_w_k_curve(&canonical, k, seed, tol)?;
        let s = conjugator_search(t0, &canonical, usize::MAX)?
            .expect("canonical reference is conjugate");
        return c.change_cover(&s);
    }
    let count = k.unsigned_abs() as usize;
    let mut c = build_base(t0, 2 * count + 2, seed, tol)?;
    let n = c.len();
    if count > n / 2 {
        return Err(Error::TooCrowded(format!("{count} kinks on {n} segments")));
    }
    let orientation = k.signum() as i32;
    // insert from the last position backwards so earlier arc indices stay valid
    for i in (0..count).rev() {
        let seg = (2 * i + 1) * n / (2 * count);
        let mut done = false;
        'place: for frac in [0.5, 0.3, 0.7] {
            let at = c.param(seg, frac);
            let clearance = kink_clearance(&c, at, tol)?;
            let mut radius = (clearance / 4.0).min(0.05);
            for _ in 0..4 {
                match add_kink(&c, at, orientation, radius, tol) {
                    Ok(next) => {
                        c = next;
                        done = true;
                        break 'place;
                    }
                    Err(Error::TooCrowded(_)) => radius /= 2.0,
                    Err(e) => return Err(e),
                }
            }
        }
        if !done {
            return Err(Error::TooCrowded(format!("could not place kink {i}")));
        }
    }
    Ok(c)
}

/// A trial whose invariant differed from the starting value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub trial: usize,
    pub expected: i64,
    pub got: i64,
    pub before: String,
    pub after: String,
    pub trace: MoveTrace,
}

/// Aggregated outcome of [`invariance_suite`], ordered by trial index.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct InvarianceReport {
    pub trials: usize,
    pub expected: i64,
    pub moves_applied: usize,
    pub moves_rejected: usize,
    pub births_d0: usize,
    pub births_dpm: usize,
    /// Finger moves whose two new events were not both `D0` or opposite `D±`.
    pub dichotomy_violations: usize,
    pub errors: Vec<String>,
    pub counterexamples: Vec<Counterexample>,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty() && self.errors.is_empty() && self.dichotomy_violations == 0
    }
}

/// Moves per trial of [`invariance_suite`].
pub const MOVES_PER_TRIAL: usize = 3;

/// The invariant of `c` for its case, with the canonical reference for
/// non-reversible Klein classes.
pub fn standard_probe(c: &CurveOnSurface, tol: &Tolerance) -> Result<i64> {
    let reference = canonical_reference(c.holonomy());
    Ok(compute_invariant(c, Some(&reference), tol)?.value)
}

/// Runs `trials` independent random move sequences from `c` and checks that
/// the case invariant never changes.
pub fn invariance_suite(
    c: &CurveOnSurface,
    trials: usize,
    seed: u64,
    tol: &Tolerance,
) -> Result<InvarianceReport> {
    invariance_suite_with(c, trials, seed, tol, &standard_probe)
}

/// [`invariance_suite`] with a caller-supplied invariant.
pub fn invariance_suite_with(
    c: &CurveOnSurface,
    trials: usize,
    seed: u64,
    tol: &Tolerance,
    probe: &(dyn Fn(&CurveOnSurface, &Tolerance) -> Result<i64> + Sync),
) -> Result<InvarianceReport> {
    let expected = probe(c, tol)?;
    type Trial = Result<(CurveOnSurface, MoveTrace, i64)>;
    let outcomes: Vec<(usize, Trial)> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let run = || -> Result<(CurveOnSurface, MoveTrace, i64)> {
                let trial_seed = seed
                    .wrapping_mul(0x9E37_79B9_7F4A_7C15)
                    .wrapping_add(trial as u64);
                let (after, trace) = random_moves(c, MOVES_PER_TRIAL, trial_seed, tol)?;
                let got = probe(&after, tol)?;
                Ok((after, trace, got))
            };
            (trial, run())
        })
        .collect();
    let mut report = InvarianceReport {
        trials,
        expected,
        ..InvarianceReport::default()
    };
    for (trial, outcome) in outcomes {
        match outcome {
            Ok((after, trace, got)) => {
                report.moves_applied += trace.moves.len();
                report.moves_rejected += trace.rejected;
                for m in &trace.moves {
                    if let Move::BirthDeath { family, .. } = m {
                        match family {
                            PairFamily::BothD0 => report.births_d0 += 1,
                            _ => report.births_dpm += 1,
                        }
                        if !family.is_dichotomous() {
                            report.dichotomy_violations += 1;
                        }
                    }
                }
                if got != expected {
                    report.counterexamples.push(Counterexample {
                        trial,
                        expected,
                        got,
                        before: c.to_json(),
                        after: after.to_json(),
                        trace,
                    });
                }
            }
            Err(e) => report.errors.push(format!("trial {trial}: {e}")),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{i_cover, invariant_or_reversing};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn finger_across_own_sheet() {
        // a curve whose strands come close inside one sheet: a long kink
        let c = build_w_k_curve(&DeckElement::torus(1, 0), 1, 5, &tol()).unwrap();
        let before = i_cover(&c, &tol()).unwrap();
        let mut found = false;
        for k in 0..40 {
            let at = k as f64 / 40.0;
            if let Ok(f) = birth_death_pair(&c, at, 0.6, &tol()) {
                assert_eq!(f.created.len(), 2);
                assert!(f.family.is_dichotomous(), "{:?}", f.family);
                assert_eq!(i_cover(&f.curve, &tol()).unwrap(), before);
                let back = f.retract().unwrap();
                assert_eq!(back, c);
                assert_eq!(
                    double_points(&back, &tol()).unwrap(),
                    double_points(&c, &tol()).unwrap()
                );
                found = true;
            }
        }
        assert!(found);
    }

    #[test]
    fn finger_across_translate_gives_d0_pair() {
        // strands of the (3,1) line are 1/sqrt(10) apart; crossings with
        // translates are D0
        let c = build_w_k_curve(&DeckElement::torus(3, 1), 0, 1, &tol()).unwrap();
        let f = (0..20)
            .find_map(|k| birth_death_pair(&c, k as f64 / 20.0 + 0.01, 0.5, &tol()).ok())
            .unwrap();
        assert_eq!(f.family, PairFamily::BothD0);
        assert_eq!(i_cover(&f.curve, &tol()).unwrap(), 0);
    }

    #[test]
    fn no_strand_in_reach() {
        let c = build_w_k_curve(&DeckElement::torus(1, 0), 0, 2, &tol()).unwrap();
        let r = birth_death_pair(&c, 0.5, 0.2, &tol());
        assert!(
            matches!(r, Err(Error::NoNearbyStrand)),
            "{:?}",
            r.map(|f| (f.strand, f.created))
        );
    }

    #[test]
    fn kink_pair_preserves_value() {
        let c = build_w_k_curve(&DeckElement::torus(1, 1), 2, 3, &tol()).unwrap();
        let d = kink_pair(&c, c.param(c.len() - 1, 0.3), 0.01, &tol()).unwrap();
        assert_eq!(
            double_points(&d, &tol()).unwrap().len(),
            double_points(&c, &tol()).unwrap().len() + 2
        );
        assert_eq!(i_cover(&d, &tol()).unwrap(), 2);
    }

    #[test]
    fn build_examples() {
        let c = build_w_k_curve(&DeckElement::torus(1, 0), 4, 1, &tol()).unwrap();
        assert_eq!(i_cover(&c, &tol()).unwrap(), 4);
        let c = build_w_k_curve(&DeckElement::klein(1, 0), 3, 1, &tol()).unwrap();
        assert_eq!(invariant_or_reversing(&c, &tol()).unwrap(), 1);
        let c = build_w_k_curve(&DeckElement::sanov(&[1]), -2, 1, &tol()).unwrap();
        assert_eq!(i_cover(&c, &tol()).unwrap(), -2);
    }

    #[test]
    fn suite_is_deterministic() {
        let c = build_w_k_curve(&DeckElement::torus(1, 0), 1, 1, &tol()).unwrap();
        let a = invariance_suite(&c, 6, 9, &tol()).unwrap();
        let b = invariance_suite(&c, 6, 9, &tol()).unwrap();
        assert_eq!(a, b);
        assert!(a.passed(), "{a:?}");
    }

    #[test]
    fn corrupted_sign_is_caught() {
        // counting D± events with sign +1 regardless of orientation is not
        // invariant under kink pairs and fingers
        let corrupted = |c: &CurveOnSurface, tol: &Tolerance| -> Result<i64> {
            Ok(double_points(c, tol)?
                .iter()
                .filter(|e| e.kind.is_dpm())
                .count() as i64)
        };
        let c = build_w_k_curve(&DeckElement::torus(1, 0), 1, 1, &tol()).unwrap();
        let r = invariance_suite_with(&c, 40, 4, &tol(), &corrupted).unwrap();
        assert!(!r.counterexamples.is_empty());
    }

    #[test]
    fn dichotomy_flags() {
        assert!(PairFamily::BothD0.is_dichotomous());
        assert!(PairFamily::BothDpm { signs: [1, -1] }.is_dichotomous());
        assert!(!PairFamily::BothDpm { signs: [1, 1] }.is_dichotomous());
        assert!(!PairFamily::Mixed.is_dichotomous());
    }
}
