//! Discrete invariants of a real trigonal curve.

use alloc::vec::Vec;
use core::fmt;

/// Unvalidated invariants `(g, n(X), δ(T), m)` of a real trigonal curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveParams {
    /// Genus `g`.
    pub genus: i64,
    /// Number of connected components (circles) of the real locus.
    pub circles: i64,
    /// δ-invariant of the trigonal pencil `T`.
    pub delta_t: i64,
    /// Maroni invariant `m`.
    pub maroni: i64,
}

/// A named invariant a [`CurveParams`] can violate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Violation {
    /// `g < 5`: the trigonal pencil is not unique.
    GenusFloor,
    /// `n` outside `1..=g+1`.
    Harnack,
    /// `m` outside `(g-4)/3 <= m <= (g-2)/2`, or `m <= 0`.
    MaroniRange,
    /// `δ(T)` not in `{1, 3}`.
    DeltaTDomain,
    /// `δ(T) = 3` without `n = 3` and `g` even.
    DeltaT3Constraint,
}

impl Violation {
    pub const fn name(self) -> &'static str {
        match self {
            Violation::GenusFloor => "genus-floor",
            Violation::Harnack => "Harnack",
            Violation::MaroniRange => "Maroni-range",
            Violation::DeltaTDomain => "deltaT-domain",
            Violation::DeltaT3Constraint => "deltaT3-constraint",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Every invariant a parameter tuple failed, in declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rejection {
    pub params: CurveParams,
    pub violations: Vec<Violation>,
}

impl Rejection {
    pub fn contains(&self, v: Violation) -> bool {
        self.violations.contains(&v)
    }
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.params;
        write!(
            f,
            "invalid curve parameters (g={}, n={}, deltaT={}, m={}):",
            p.genus, p.circles, p.delta_t, p.maroni
        )?;
        for (i, v) in self.violations.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}{v}")?;
        }
        Ok(())
    }
}

impl core::error::Error for Rejection {}

impl CurveParams {
    pub const fn new(genus: i64, circles: i64, delta_t: i64, maroni: i64) -> Self {
        CurveParams {
            genus,
            circles,
            delta_t,
            maroni,
        }
    }

    /// Lists the violated invariants without deciding anything else.
    pub fn violations(&self) -> Vec<Violation> {
        let CurveParams {
            genus: g,
            circles: n,
            delta_t,
            maroni: m,
        } = *self;
        let mut out = Vec::new();
        if g < 5 {
            out.push(Violation::GenusFloor);
        }
        if n < 1 || n > g + 1 {
            out.push(Violation::Harnack);
        }
        // 3m >= g - 4 and 2m <= g - 2, compared as integers.
        if m <= 0 || 3 * m < g - 4 || 2 * m > g - 2 {
            out.push(Violation::MaroniRange);
        }
        if delta_t != 1 && delta_t != 3 {
            out.push(Violation::DeltaTDomain);
        }
        if delta_t == 3 && (n != 3 || g % 2 != 0) {
            out.push(Violation::DeltaT3Constraint);
        }
        out
    }

    /// Returns the validated curve, or every violated invariant.
    pub fn validate(self) -> Result<Curve, Rejection> {
        let violations = self.violations();
        if violations.is_empty() {
            Ok(Curve(self))
        } else {
            Err(Rejection {
                params: self,
                violations,
            })
        }
    }
}

/// Parameters that passed [`CurveParams::validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Curve(CurveParams);

/// Invariants derived from `(g, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DerivedInvariants {
    /// Degree of the larger twisting summand, `a = g - 2 - m`.
    pub co_maroni: i64,
    /// Dimension of the space of real trigonal curves with this `(g, m)`.
    pub moduli_dim: i64,
}

impl Curve {
    pub fn new(genus: i64, circles: i64, delta_t: i64, maroni: i64) -> Result<Self, Rejection> {
        CurveParams::new(genus, circles, delta_t, maroni).validate()
    }

    pub const fn params(&self) -> CurveParams {
        self.0
    }

    pub const fn genus(&self) -> i64 {
        self.0.genus
    }

    pub const fn circles(&self) -> i64 {
        self.0.circles
    }

    pub const fn delta_t(&self) -> i64 {
        self.0.delta_t
    }

    pub const fn maroni(&self) -> i64 {
        self.0.maroni
    }

    /// `a = g - 2 - m`; always `>= m` on a valid curve.
    pub const fn co_maroni(&self) -> i64 {
        self.0.genus - 2 - self.0.maroni
    }

    pub fn derive(&self) -> DerivedInvariants {
        let (g, m) = (self.genus(), self.maroni());
        let moduli_dim = if 2 * m < g - 2 {
            g + 2 * m + 4
        } else {
            2 * g + 1
        };
        DerivedInvariants {
            co_maroni: self.co_maroni(),
            moduli_dim,
        }
    }
}

/// Valid Maroni invariants for genus `g`, as an inclusive range.
pub fn maroni_range(g: i64) -> core::ops::RangeInclusive<i64> {
    // ceil((g - 4) / 3), floored at 1
    let lo = (g - 4 + 2).div_euclid(3).max(1);
    let hi = (g - 2).div_euclid(2);
    lo..=hi
}

/// Every valid curve of genus `g`, ordered by `(n, δ(T), m)`.
pub fn curves_of_genus(g: i64) -> impl Iterator<Item = Curve> {
    (1..=g + 1).flat_map(move |n| {
        [1, 3]
            .into_iter()
            .flat_map(move |dt| maroni_range(g).filter_map(move |m| Curve::new(g, n, dt, m).ok()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_five_example_is_valid() {
        let c = Curve::new(5, 2, 1, 1).unwrap();
        let d = c.derive();
        assert_eq!(d.co_maroni, 2);
        assert_eq!(d.moduli_dim, 11);
    }

    #[test]
    fn delta_three_even_genus() {
        assert!(Curve::new(6, 3, 3, 1).is_ok());
        let err = Curve::new(7, 2, 3, 1).unwrap_err();
        assert_eq!(err.violations, [Violation::DeltaT3Constraint]);
    }

    #[test]
    fn derived_examples() {
        assert_eq!(Curve::new(6, 1, 1, 2).unwrap().derive().moduli_dim, 13);
        let c = Curve::new(12, 1, 1, 3).unwrap();
        assert_eq!(
            c.derive(),
            DerivedInvariants {
                co_maroni: 7,
                moduli_dim: 22
            }
        );
    }

    #[test]
    fn reports_every_violation() {
        let err = CurveParams::new(4, 0, 2, 0).validate().unwrap_err();
        assert_eq!(
            err.violations,
            [
                Violation::GenusFloor,
                Violation::Harnack,
                Violation::MaroniRange,
                Violation::DeltaTDomain
            ]
        );
        assert!(err.to_string().contains("genus-floor, Harnack"));
    }

    #[test]
    fn maroni_lower_bound_at_g_one_mod_three() {
        // g = 10: (g-4)/3 = 2 exactly, so m = 2 is allowed and m = 1 is not.
        assert!(Curve::new(10, 1, 1, 2).is_ok());
        assert!(Curve::new(10, 1, 1, 1)
            .unwrap_err()
            .contains(Violation::MaroniRange));
        // g = 11: (g-4)/3 = 7/3, so m = 2 fails.
        assert!(Curve::new(11, 1, 1, 2).is_err());
        assert!(Curve::new(11, 1, 1, 3).is_ok());
    }

    #[test]
    fn maroni_range_matches_exhaustive_loop() {
        for g in 5..=100i64 {
            let valid: Vec<i64> = (-5..=g + 5)
                .filter(|&m| Curve::new(g, 1, 1, m).is_ok())
                .collect();
            let expected: Vec<i64> = maroni_range(g).collect();
            assert_eq!(valid, expected, "g = {g}");
            for c in valid.iter().map(|&m| Curve::new(g, 1, 1, m).unwrap()) {
                assert!(c.co_maroni() >= c.maroni() && c.maroni() >= 1);
                assert_eq!(c.co_maroni() + c.maroni(), g - 2);
                assert_eq!(c.params().validate(), Ok(c));
            }
        }
    }
}
