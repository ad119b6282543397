//! Exact combinatorics of real Brill-Noether loci on real trigonal curves.
//!
//! A real trigonal curve is modelled only through its discrete invariants
//! (genus, number of real circles, the δ-invariant of the trigonal pencil and
//! the Maroni invariant). On top of that the crate provides:
//!
//! * a formal divisor algebra on the real circles ([`divisor`]),
//! * labels and counts for the connected components of real symmetric
//!   products ([`components`]),
//! * dimensions of the twists `K + kT` from the pushforward splitting
//!   ([`cohomology`]),
//! * the decision ladder for the number of connected components of
//!   `W^r_d(ℝ)` and the admissible `(d, r)` segment ([`classify`]),
//! * re-executable divisor constructions that certify the intersection
//!   claims behind the exact counts ([`harness`]).
//!
//! Everything is exact integer arithmetic. The crate is `no_std` and only
//! needs `alloc`.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]
// Inequalities are written the way the formulas read, e.g. `m <= d - 2r - 1`.
#![allow(clippy::int_plus_one)]

extern crate alloc;

pub mod classify;
pub mod cohomology;
pub mod components;
pub mod curve;
pub mod divisor;
pub mod harness;

pub use classify::{
    admissible_region, classify, describe, ClassifyError, LocusClassification, LocusCount,
    LocusDescriptor, RegimeTag, RegionPoint,
};
pub use cohomology::{
    base_point_count, h0_twist, residual_degree, residual_in_u, uv_intersection_possible,
    RegimeError, TwistProfile,
};
pub use components::{
    binomial, count_w0, enumerate_labels, label_of, s_n_k, ComponentLabel, Count, LabelError,
    MAX_CIRCLES,
};
pub use curve::{Curve, CurveParams, DerivedInvariants, Rejection, Violation};
pub use divisor::{
    check_delta_bounds, DeltaBoundFailure, NotationError, ParityVector, PointLabel, RealDivisor,
};
