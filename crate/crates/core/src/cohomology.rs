//! Sections of `K + kT` from the splitting `π_* K = O(a) ⊕ O(m) ⊕ O(-2)`.

use core::fmt;

use crate::curve::Curve;

/// `h⁰` of a line bundle of degree `e` on the projective line.
pub const fn h0_line(e: i64) -> i64 {
    if e < -1 {
        0
    } else {
        e + 1
    }
}

/// Global sections of `K + kT`, split by summand of the pushforward.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwistProfile {
    pub k: i64,
    pub h0: i64,
    /// `h⁰(O(a+k))`, `h⁰(O(m+k))`, `h⁰(O(k-2))`.
    pub summands: [i64; 3],
    /// `deg(K + kT) = 2g - 2 + 3k`.
    pub degree: i64,
}

/// `h⁰(X, K + kT)` for any signed `k`.
pub fn h0_twist(curve: &Curve, k: i64) -> TwistProfile {
    let summands = [
        h0_line(curve.co_maroni() + k),
        h0_line(curve.maroni() + k),
        h0_line(k - 2),
    ];
    TwistProfile {
        k,
        h0: summands.iter().sum(),
        summands,
        degree: 2 * curve.genus() - 2 + 3 * k,
    }
}

/// `h⁰(X, kT)` by Riemann-Roch against `h⁰(K - kT)`.
pub fn h0_pencil_multiple(curve: &Curve, k: i64) -> i64 {
    3 * k - curve.genus() + 1 + h0_twist(curve, -k).h0
}

/// `deg(K - (g-d+2r-1)T) = 3d - g - 6r + 1`.
pub const fn residual_degree(g: i64, d: i64, r: i64) -> i64 {
    3 * d - g - 6 * r + 1
}

/// Whether `K - (g-d+2r-1)T` can be effective, i.e. `m <= d - 2r - 1`.
///
/// Equivalent to `h0_twist(curve, -(g-d+2r-1)).h0 > 0`.
pub fn uv_intersection_possible(curve: &Curve, d: i64, r: i64) -> bool {
    curve.maroni() <= d - 2 * r - 1
}

/// Input outside the regime an operation is defined on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegimeError {
    pub requirement: &'static str,
    pub g: i64,
    pub m: i64,
    pub d: i64,
    pub r: i64,
}

impl fmt::Display for RegimeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(g={}, m={}, d={}, r={}) violates {}",
            self.g, self.m, self.d, self.r, self.requirement
        )
    }
}

impl core::error::Error for RegimeError {}

pub(crate) fn regime_error(
    curve: &Curve,
    d: i64,
    r: i64,
    requirement: &'static str,
) -> RegimeError {
    RegimeError {
        requirement,
        g: curve.genus(),
        m: curve.maroni(),
        d,
        r,
    }
}

/// Number of base points of `K - (g-d+2r-1)T`, `2g - 3d + 3r + 1`, in the
/// regime `g - d + r - 1 = m <= d - 2r - 1`.
pub fn base_point_count(curve: &Curve, d: i64, r: i64) -> Result<i64, RegimeError> {
    let (g, m) = (curve.genus(), curve.maroni());
    if g - d + r - 1 != m {
        return Err(regime_error(curve, d, r, "g - d + r - 1 = m"));
    }
    if m > d - 2 * r - 1 {
        return Err(regime_error(curve, d, r, "m <= d - 2r - 1"));
    }
    let count = 2 * g - 3 * d + 3 * r + 1;
    // guaranteed by 3m >= g - 4
    debug_assert!(count >= 0);
    Ok(count)
}

/// Whether `κ - (g-d+2r-1)τ` lies in `U^{2d-g-3r}_{3d-g-6r+1}(ℝ)`, which
/// happens exactly when `g - d + r - 1 = m`. Requires
/// `0 < g - d + r - 1 <= m <= d - 2r - 1`.
pub fn residual_in_u(curve: &Curve, d: i64, r: i64) -> Result<bool, RegimeError> {
    let (g, m) = (curve.genus(), curve.maroni());
    let e = g - d + r - 1;
    if !(0 < e && e <= m && m <= d - 2 * r - 1) {
        return Err(regime_error(
            curve,
            d,
            r,
            "0 < g - d + r - 1 <= m <= d - 2r - 1",
        ));
    }
    Ok(e == m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::curves_of_genus;

    fn c(g: i64, m: i64) -> Curve {
        Curve::new(g, 1, 1, m).unwrap()
    }

    #[test]
    fn genus_five_twists() {
        let x = c(5, 1);
        assert_eq!(h0_twist(&x, 0).h0, 5);
        assert_eq!(h0_twist(&x, -1).h0, 3);
        let p = h0_twist(&x, -2);
        assert_eq!(p.h0, 1);
        assert_eq!(p.summands, [1, 0, 0]);
        assert_eq!(p.degree, 2);
    }

    #[test]
    fn intersection_examples() {
        assert!(uv_intersection_possible(&c(5, 1), 4, 1));
        assert!(!uv_intersection_possible(&c(6, 2), 4, 1));
        assert!(uv_intersection_possible(&c(12, 3), 9, 1));
    }

    #[test]
    fn base_point_examples() {
        assert_eq!(base_point_count(&c(5, 1), 4, 1), Ok(2));
        assert_eq!(base_point_count(&c(6, 1), 5, 1), Ok(1));
        assert_eq!(base_point_count(&c(12, 3), 9, 1), Ok(1));
        assert!(base_point_count(&c(6, 2), 4, 1).is_err());
        assert!(base_point_count(&c(7, 2), 6, 1).is_err());
    }

    #[test]
    fn membership_examples() {
        assert_eq!(residual_in_u(&c(5, 1), 4, 1), Ok(true));
        assert_eq!(residual_in_u(&c(7, 2), 6, 1), Ok(false));
        assert_eq!(residual_in_u(&c(12, 3), 9, 1), Ok(true));
        assert!(residual_in_u(&c(6, 2), 4, 1).is_err());
    }

    #[test]
    fn residual_degree_matches_twist_degree() {
        for x in (5..=20).flat_map(curves_of_genus) {
            let g = x.genus();
            for d in 0..g {
                for r in 1..=d {
                    let t = h0_twist(&x, -(g - d + 2 * r - 1));
                    assert_eq!(t.degree, residual_degree(g, d, r));
                }
            }
        }
    }

    #[test]
    fn canonical_pencil_and_monotonicity() {
        for x in (5..=40).flat_map(curves_of_genus) {
            assert_eq!(h0_twist(&x, 0).h0, x.genus());
            assert_eq!(h0_pencil_multiple(&x, 1), 2);
            for k in -60..60 {
                assert!(h0_twist(&x, k).h0 <= h0_twist(&x, k + 1).h0);
            }
        }
    }

    #[test]
    fn intersection_criterion_matches_cohomology() {
        for x in (5..=20).flat_map(curves_of_genus) {
            let g = x.genus();
            for d in 1..g {
                for r in 1..=d {
                    let h0 = h0_twist(&x, -(g - d + 2 * r - 1)).h0;
                    assert_eq!(
                        uv_intersection_possible(&x, d, r),
                        h0 > 0,
                        "{x:?} d={d} r={r}"
                    );
                }
            }
        }
    }

    #[test]
    fn membership_matches_cohomology() {
        for x in (5..=30).flat_map(curves_of_genus) {
            let g = x.genus();
            for d in 1..g {
                for r in 1..=d {
                    if let Ok(inside) = residual_in_u(&x, d, r) {
                        let h0 = h0_twist(&x, -(d - r - 1)).h0;
                        assert_eq!(inside, h0 > 0);
                    }
                }
            }
        }
    }
}
