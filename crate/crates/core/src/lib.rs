//! Winding numbers of generic regular closed curves on flat and hyperbolic
//! surfaces.
//!
//! Surfaces are given by their deck groups acting on the model plane
//! ([`deck`]); a curve is one period of a cover together with its holonomy
//! ([`curve`]). Invariants are signed counts of double points in the cover
//! ([`invariants`]), and [`homotopy`] provides the regular-homotopy moves and
//! the randomized invariance checks.

pub mod curve;
pub mod deck;
pub mod error;
pub mod geometry;
pub mod homotopy;
pub mod invariants;
pub mod tolerance;

pub use curve::{
    add_kink, change_cover, classify, double_points, geodesic_representative,
    horocycle_representative, loop_classes_at, perturb, validate_generic, CurveOnSurface,
    DoublePointEvent, EventKind, GenericityReport, Violation, ViolationKind,
};
pub use deck::{
    conjugator_search, cyclic_power, enumerate_overlapping, is_reversible, DeckElement, FreeWord,
    GroupKind,
};
pub use error::{Error, Result};
pub use geometry::{Arc, Direction, Kernel, Point};
pub use homotopy::{
    birth_death_pair, build_w_k_curve, invariance_suite, invariance_suite_with, kink_pair,
    random_moves, FingerMove, InvarianceReport, Move, MoveTrace, PairFamily,
};
pub use invariants::{
    compute_invariant, direction_degree_oracle, i_cover, invariant_op_nonreversible,
    invariant_op_reversible, invariant_or_reversing, invariant_orientable, pi1_i, sign_of_event,
    tanio_kobayashi_t, whitney_index_nullhomotopic, Case, InvariantReport,
};
pub use tolerance::Tolerance;
