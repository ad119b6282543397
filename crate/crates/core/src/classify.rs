//! Number of connected components of `W^r_d(ℝ)` for a real trigonal curve.
//!
//! For `d < g` and `r >= 1`, `W^r_d = U ∪ V` where `U = rτ + W⁰_{d-3r}` and
//! `V = κ - ((g-d+r-1)τ + W⁰_s)` with `s = 2(d-1) - g - 3(r-1)`. Each piece has
//! as many real components as the corresponding `W⁰`, so everything reduces
//! to deciding which components of `U(ℝ)` and `V(ℝ)` meet.
//!
//! [`classify`] walks a fixed ladder of cases, first match wins, and tags the
//! result with the argument it rests on.

use alloc::vec::Vec;
use core::fmt;

use crate::cohomology::residual_degree;
use crate::components::{binomial, s_n_k, Count, MAX_CIRCLES};
use crate::curve::Curve;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocusDescriptor {
    pub d: i64,
    pub r: i64,
    /// Degree of the `W⁰` that `V` translates.
    pub s: i64,
    pub u_nonempty: bool,
    pub v_nonempty: bool,
    /// `g - d + r - 1 <= m`: `V` is a component distinct from `U`.
    pub v_is_separate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    /// `r = 0` has no `U`/`V` decomposition; use [`crate::count_w0`].
    ZeroDimension,
    NegativeDimension {
        r: i64,
    },
    /// `r >= 1` needs `d < g`.
    DegreeOutOfScope {
        d: i64,
        g: i64,
    },
    /// `r = 0` needs `d >= 1`.
    NonPositiveDegree {
        d: i64,
    },
    /// A single base point and `δ(T) = 3` cannot coexist.
    Inconsistent,
    TooManyCircles {
        n: i64,
    },
}

impl fmt::Display for ClassifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassifyError::ZeroDimension => f.write_str("r = 0 is counted by the W0 formula"),
            ClassifyError::NegativeDimension { r } => write!(f, "r = {r} is negative"),
            ClassifyError::DegreeOutOfScope { d, g } => {
                write!(f, "d = {d} is not below the genus {g}")
            }
            ClassifyError::NonPositiveDegree { d } => write!(f, "d = {d} must be at least 1"),
            ClassifyError::Inconsistent => f.write_str(
                "inconsistent parameters: a single base point of K-(g-d+2r-1)T forces δ(T)=1",
            ),
            ClassifyError::TooManyCircles { n } => {
                write!(f, "n = {n} exceeds the supported maximum {MAX_CIRCLES}")
            }
        }
    }
}

impl core::error::Error for ClassifyError {}

impl ClassifyError {
    /// Whether the rejection is about the parameters (as opposed to the call).
    pub fn is_domain(&self) -> bool {
        matches!(self, ClassifyError::Inconsistent)
    }
}

pub fn describe(curve: &Curve, d: i64, r: i64) -> Result<LocusDescriptor, ClassifyError> {
    let g = curve.genus();
    if r == 0 {
        return Err(ClassifyError::ZeroDimension);
    }
    if r < 0 {
        return Err(ClassifyError::NegativeDimension { r });
    }
    if d >= g {
        return Err(ClassifyError::DegreeOutOfScope { d, g });
    }
    let s = 2 * (d - 1) - g - 3 * (r - 1);
    Ok(LocusDescriptor {
        d,
        r,
        s,
        u_nonempty: d - 3 * r >= 0,
        v_nonempty: s >= 0,
        v_is_separate: g - d + r - 1 <= curve.maroni(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocusCount {
    Empty,
    Exact(Count),
    Bounds { lower: Count, upper: Count },
}

impl LocusCount {
    pub fn lower(&self) -> Count {
        match *self {
            LocusCount::Empty => 0,
            LocusCount::Exact(v) => v,
            LocusCount::Bounds { lower, .. } => lower,
        }
    }

    pub fn upper(&self) -> Count {
        match *self {
            LocusCount::Empty => 0,
            LocusCount::Exact(v) => v,
            LocusCount::Bounds { upper, .. } => upper,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            LocusCount::Empty => "empty",
            LocusCount::Exact(_) => "exact",
            LocusCount::Bounds { .. } => "bounds",
        }
    }
}

/// Provenance tags attached to a classification.
pub mod tag {
    pub const W0_COUNT: &str = "w0-count";
    pub const BOTH_EMPTY: &str = "u-and-v-empty";
    pub const V_EMPTY: &str = "v-empty:u-is-w0-translate";
    pub const V_NOT_SEPARATE: &str = "v-not-a-separate-component";
    pub const DISJOINT: &str = "u-v-disjoint:components-add";
    pub const DERIVED: &str = "derived";
    pub const S_ZERO: &str = "s-zero:v-is-a-point";
    pub const ENVELOPE: &str = "u-plus-v-envelope";
    pub const LOWER_MAX: &str = "lower:no-component-meets-two";
    pub const DELTA3: &str = "delta3:every-v-component-meets-u";
    pub const ONE_CIRCLE: &str = "one-circle:u-and-v-meet";
    pub const EXCEPTIONAL: &str = "pencil-split:only-exceptional-v-components-can-stay-apart";
    pub const OBSTRUCTION: &str = "single-base-point:exceptional-v-components-stay-apart";
    pub const RECONSTRUCTED: &str = "reconstructed";
    pub const COINCIDE: &str = "bounds-coincide";
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocusClassification {
    pub d: i64,
    pub r: i64,
    pub count: LocusCount,
    pub provenance: Vec<&'static str>,
}

impl LocusClassification {
    fn new(d: i64, r: i64, count: LocusCount, provenance: &[&'static str]) -> Self {
        LocusClassification {
            d,
            r,
            count,
            provenance: provenance.to_vec(),
        }
    }
}

fn bounds(lower: Count, upper: Count) -> LocusCount {
    debug_assert!(lower <= upper);
    LocusCount::Bounds { lower, upper }
}

/// Whether `g - d + r - 1 = m <= d - 2r - 1` and `2g - 3d + 3r + 1 = 1`.
pub fn single_base_point_regime(curve: &Curve, d: i64, r: i64) -> bool {
    let (g, m) = (curve.genus(), curve.maroni());
    g - d + r - 1 == m && m <= d - 2 * r - 1 && 2 * g - 3 * d + 3 * r + 1 == 1
}

/// Best available statement about `n(W^r_d)`.
///
/// `r = 0` returns `n(W⁰_d)`; `r >= 1` requires `d < g`.
pub fn classify(curve: &Curve, d: i64, r: i64) -> Result<LocusClassification, ClassifyError> {
    let n = curve.circles();
    if n > MAX_CIRCLES {
        return Err(ClassifyError::TooManyCircles { n });
    }
    if r == 0 {
        if d < 1 {
            return Err(ClassifyError::NonPositiveDegree { d });
        }
        let c = LocusCount::Exact(s_n_k(n, d));
        return Ok(LocusClassification::new(d, r, c, &[tag::W0_COUNT]));
    }
    let desc = describe(curve, d, r)?;
    let (g, m) = (curve.genus(), curve.maroni());
    let s = desc.s;
    let n_u = s_n_k(n, d - 3 * r);
    let out = |c: LocusCount, p: &[&'static str]| Ok(LocusClassification::new(d, r, c, p));

    if !desc.u_nonempty && !desc.v_nonempty {
        return out(LocusCount::Empty, &[tag::BOTH_EMPTY]);
    }
    if !desc.v_nonempty {
        return out(LocusCount::Exact(n_u), &[tag::V_EMPTY]);
    }
    if !desc.v_is_separate {
        return out(LocusCount::Exact(n_u), &[tag::V_NOT_SEPARATE]);
    }
    let n_v = s_n_k(n, s);
    if !uv_can_meet(m, d, r) {
        return out(LocusCount::Exact(n_u + n_v), &[tag::DISJOINT, tag::DERIVED]);
    }
    if s == 0 {
        return out(bounds(n_u, n_u + 1), &[tag::LOWER_MAX, tag::S_ZERO]);
    }
    if single_base_point_regime(curve, d, r) && curve.delta_t() == 3 {
        return Err(ClassifyError::Inconsistent);
    }
    if g - d + r - 1 == m && m < d - 2 * r - 1 {
        let exceptional = binomial(n - 1, 2 * d - g - 3 * r + 1);
        if curve.delta_t() == 3 {
            return out(LocusCount::Exact(n_u), &[tag::DELTA3]);
        }
        if 2 * g - 3 * d + 3 * r + 1 == 1 {
            return out(
                LocusCount::Exact(n_u + exceptional),
                &[tag::EXCEPTIONAL, tag::OBSTRUCTION, tag::RECONSTRUCTED],
            );
        }
        if n == 1 {
            return out(LocusCount::Exact(1), &[tag::ONE_CIRCLE]);
        }
        if exceptional == 0 {
            return out(
                LocusCount::Exact(n_u),
                &[tag::LOWER_MAX, tag::EXCEPTIONAL, tag::COINCIDE],
            );
        }
        return out(
            bounds(n_u, n_u + exceptional),
            &[tag::LOWER_MAX, tag::EXCEPTIONAL],
        );
    }
    out(bounds(n_u, n_u + n_v), &[tag::LOWER_MAX, tag::ENVELOPE])
}

fn uv_can_meet(m: i64, d: i64, r: i64) -> bool {
    m <= d - 2 * r - 1
}

/// Where a point of the admissible segment sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RegimeTag {
    /// One base point: the exact count with exceptional components applies.
    SingleBasePoint,
    /// `m < d - 2r - 1` with a base-point count other than one.
    Strict,
    /// `m = d - 2r - 1`.
    Boundary,
}

impl RegimeTag {
    pub fn name(self) -> &'static str {
        match self {
            RegimeTag::SingleBasePoint => "single-base-point",
            RegimeTag::Strict => "strict",
            RegimeTag::Boundary => "boundary",
        }
    }
}

impl fmt::Display for RegimeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegionPoint {
    pub d: i64,
    pub r: i64,
    pub base_points: i64,
    pub tag: RegimeTag,
}

/// Lattice points `(d, r)` with `r >= 1`, `d < g`, `g - d + r - 1 = m` and
/// `m <= d - 2r - 1`, ordered by `r`.
///
/// They all lie on `d = g - m + r - 1` with `1 <= r <= min(m, g - 2m - 2)`,
/// and share the base-point count `3m - g + 4`.
pub fn admissible_region(curve: &Curve) -> Vec<RegionPoint> {
    let (g, m) = (curve.genus(), curve.maroni());
    let base_points = 3 * m - g + 4;
    (1..=m.min(g - 2 * m - 2))
        .map(|r| {
            let d = g - m + r - 1;
            let tag = if m == d - 2 * r - 1 {
                RegimeTag::Boundary
            } else if base_points == 1 {
                RegimeTag::SingleBasePoint
            } else {
                RegimeTag::Strict
            };
            debug_assert_eq!(2 * g - 3 * d + 3 * r + 1, base_points);
            debug_assert!(residual_degree(g, d, r) >= 0);
            RegionPoint {
                d,
                r,
                base_points,
                tag,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::curves_of_genus;
    use alloc::vec;

    fn curve(g: i64, n: i64, dt: i64, m: i64) -> Curve {
        Curve::new(g, n, dt, m).unwrap()
    }

    #[test]
    fn describe_examples() {
        let d = describe(&curve(5, 1, 1, 1), 4, 1).unwrap();
        assert_eq!(
            (d.s, d.u_nonempty, d.v_nonempty, d.v_is_separate),
            (1, true, true, true)
        );
        let d = describe(&curve(10, 1, 1, 2), 4, 1).unwrap();
        assert_eq!((d.s, d.u_nonempty, d.v_nonempty), (-4, true, false));
        let d = describe(&curve(6, 1, 1, 1), 4, 2).unwrap();
        assert_eq!((d.s, d.u_nonempty, d.v_nonempty), (-3, false, false));
        assert_eq!(
            classify(&curve(6, 1, 1, 1), 4, 2).unwrap().count,
            LocusCount::Empty
        );
    }

    #[test]
    fn describe_rejections() {
        let x = curve(6, 1, 1, 1);
        assert_eq!(describe(&x, 4, 0), Err(ClassifyError::ZeroDimension));
        assert_eq!(
            describe(&x, 6, 1),
            Err(ClassifyError::DegreeOutOfScope { d: 6, g: 6 })
        );
        assert_eq!(
            classify(&x, 0, 0),
            Err(ClassifyError::NonPositiveDegree { d: 0 })
        );
        assert_eq!(
            classify(&x, 3, -1),
            Err(ClassifyError::NegativeDimension { r: -1 })
        );
    }

    #[test]
    fn descriptor_identities() {
        for x in (5..=25).flat_map(curves_of_genus) {
            let g = x.genus();
            for d in -2..g {
                for r in 1..=g {
                    let desc = describe(&x, d, r).unwrap();
                    assert_eq!(desc.s, 2 * d - g - 3 * r + 1);
                    assert!(!desc.v_nonempty || desc.u_nonempty);
                }
            }
        }
    }

    #[test]
    fn classify_examples() {
        let c = classify(&curve(5, 2, 1, 1), 4, 1).unwrap();
        assert_eq!(c.count, LocusCount::Bounds { lower: 2, upper: 4 });

        let c = classify(&curve(6, 3, 1, 1), 5, 1).unwrap();
        assert_eq!(c.count, LocusCount::Exact(5));
        assert!(c.provenance.contains(&tag::RECONSTRUCTED));

        let c = classify(&curve(6, 2, 1, 2), 4, 1).unwrap();
        assert_eq!(c.count, LocusCount::Exact(3));
        assert!(c.provenance.contains(&tag::DERIVED));

        assert_eq!(
            classify(&curve(6, 3, 3, 1), 5, 1),
            Err(ClassifyError::Inconsistent)
        );

        let c = classify(&curve(10, 1, 1, 2), 8, 1).unwrap();
        assert_eq!(c.count, LocusCount::Exact(1));
        assert_eq!(c.provenance, [tag::ONE_CIRCLE]);

        let c = classify(&curve(7, 3, 1, 2), 4, 0).unwrap();
        assert_eq!(c.count, LocusCount::Exact(s_n_k(3, 4)));
    }

    #[test]
    fn region_examples() {
        let pts = |g, m| -> Vec<(i64, i64, i64, RegimeTag)> {
            admissible_region(&curve(g, 1, 1, m))
                .into_iter()
                .map(|p| (p.d, p.r, p.base_points, p.tag))
                .collect()
        };
        assert_eq!(pts(6, 1), vec![(5, 1, 1, RegimeTag::SingleBasePoint)]);
        assert_eq!(pts(5, 1), vec![(4, 1, 2, RegimeTag::Boundary)]);
        assert_eq!(
            pts(12, 3),
            vec![
                (9, 1, 1, RegimeTag::SingleBasePoint),
                (10, 2, 1, RegimeTag::SingleBasePoint),
                (11, 3, 1, RegimeTag::SingleBasePoint)
            ]
        );
    }

    #[test]
    fn region_matches_double_loop() {
        for g in 5..=60 {
            for m in crate::curve::maroni_range(g) {
                let x = curve(g, 1, 1, m);
                let mut expect = Vec::new();
                for r in 1..g {
                    for d in r..g {
                        if g - d + r - 1 == m && m <= d - 2 * r - 1 {
                            expect.push((d, r));
                        }
                    }
                }
                let got: Vec<_> = admissible_region(&x).iter().map(|p| (p.d, p.r)).collect();
                assert_eq!(got, expect, "g={g} m={m}");
                for p in admissible_region(&x) {
                    assert_eq!(2 * g - 3 * p.d + 3 * p.r + 1, 3 * m - g + 4);
                }
            }
        }
    }

    #[test]
    fn envelope_and_floor() {
        for x in (5..=22).flat_map(curves_of_genus) {
            let (g, n, m) = (x.genus(), x.circles(), x.maroni());
            for d in 1..g {
                for r in 1..=d {
                    let Ok(c) = classify(&x, d, r) else {
                        assert!(single_base_point_regime(&x, d, r) && x.delta_t() == 3);
                        continue;
                    };
                    let s = 2 * d - g - 3 * r + 1;
                    let n_u = s_n_k(n, d - 3 * r);
                    let cap = n_u + if s >= 0 { s_n_k(n, s) } else { 0 };
                    assert!(c.count.lower() <= c.count.upper());
                    assert!(c.count.upper() <= cap);
                    if g - d + r - 1 <= m && c.count != LocusCount::Empty {
                        assert!(c.count.lower() >= n_u);
                    }
                }
            }
        }
    }
}
