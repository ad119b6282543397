//! Formal divisors on the combinatorial model of a real curve.
//!
//! A real point is known only by the circle `C_i` it lies on and an opaque
//! name; a non-real point only ever appears together with its conjugate, so
//! the pair is stored as a single [`PointLabel::ConjugatePair`] that counts
//! twice towards the degree and never towards a circle parity.
//!
//! Textual notation: `3*R(1,a) - 2*R(2,b) + 1*P(x)`, where `R(i,id)` is a
//! real point on circle `i` and `P(id)` a conjugate pair. The zero divisor
//! prints as `0`. [`RealDivisor`]'s `Display` output is canonical and parses
//! back to the same divisor.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};
use core::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointLabel {
    RealPoint { circle: u32, id: String },
    ConjugatePair { id: String },
}

impl PointLabel {
    pub fn real(circle: u32, id: impl Into<String>) -> Self {
        PointLabel::RealPoint {
            circle,
            id: id.into(),
        }
    }

    pub fn pair(id: impl Into<String>) -> Self {
        PointLabel::ConjugatePair { id: id.into() }
    }

    pub fn circle(&self) -> Option<u32> {
        match self {
            PointLabel::RealPoint { circle, .. } => Some(*circle),
            PointLabel::ConjugatePair { .. } => None,
        }
    }

    /// Contribution of one copy of this point to the total degree.
    pub fn weight(&self) -> i64 {
        match self {
            PointLabel::RealPoint { .. } => 1,
            PointLabel::ConjugatePair { .. } => 2,
        }
    }
}

impl fmt::Display for PointLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointLabel::RealPoint { circle, id } => write!(f, "R({circle},{id})"),
            PointLabel::ConjugatePair { id } => write!(f, "P({id})"),
        }
    }
}

/// Per-circle degree parities of a divisor, an element of `(Z/2)^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParityVector(Vec<bool>);

impl ParityVector {
    pub fn zero(circles: u32) -> Self {
        ParityVector(alloc::vec![false; circles as usize])
    }

    /// The vector with a single odd entry on circle `circle` (1-based).
    pub fn unit(circles: u32, circle: u32) -> Self {
        let mut v = Self::zero(circles);
        v.flip(circle);
        v
    }

    pub fn ones(circles: u32) -> Self {
        ParityVector(alloc::vec![true; circles as usize])
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        ParityVector(bits)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Bit of circle `circle` (1-based).
    pub fn get(&self, circle: u32) -> bool {
        self.0[circle as usize - 1]
    }

    pub fn flip(&mut self, circle: u32) {
        let b = &mut self.0[circle as usize - 1];
        *b = !*b;
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn popcount(&self) -> u32 {
        self.0.iter().filter(|b| **b).count() as u32
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|b| !*b)
    }

    /// 1-based indices of the odd circles, increasing.
    pub fn odd_circles(&self) -> Vec<u32> {
        (1..=self.0.len() as u32).filter(|&i| self.get(i)).collect()
    }

    pub fn xor(&self, other: &ParityVector) -> ParityVector {
        assert_eq!(
            self.len(),
            other.len(),
            "parity vectors of different length"
        );
        ParityVector(self.0.iter().zip(&other.0).map(|(a, b)| a ^ b).collect())
    }

    /// `k · self` in `(Z/2)^n`.
    pub fn scaled(&self, k: i64) -> ParityVector {
        if k.rem_euclid(2) == 1 {
            self.clone()
        } else {
            ParityVector::zero(self.len() as u32)
        }
    }
}

impl fmt::Display for ParityVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(if *b { "1" } else { "0" })?;
        }
        f.write_str(")")
    }
}

/// A formal integer combination of real points and conjugate pairs on a curve
/// with `circles` real components.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RealDivisor {
    circles: u32,
    terms: BTreeMap<PointLabel, i64>,
}

impl RealDivisor {
    pub fn zero(circles: u32) -> Self {
        RealDivisor {
            circles,
            terms: BTreeMap::new(),
        }
    }

    pub fn circles(&self) -> u32 {
        self.circles
    }

    /// Adds `mult` copies of `label`.
    ///
    /// Panics if a real point lies on a circle outside `1..=circles`.
    pub fn add_point(&mut self, label: PointLabel, mult: i64) {
        if let Some(c) = label.circle() {
            assert!(
                (1..=self.circles).contains(&c),
                "circle {c} outside 1..={}",
                self.circles
            );
        }
        if mult == 0 {
            return;
        }
        // no zero entries, so equality is structural
        match self.terms.entry(label) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += mult;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(mult);
            }
        }
    }

    pub fn with(mut self, label: PointLabel, mult: i64) -> Self {
        self.add_point(label, mult);
        self
    }

    pub fn with_real(self, circle: u32, id: &str, mult: i64) -> Self {
        self.with(PointLabel::real(circle, id), mult)
    }

    pub fn with_pair(self, id: &str, mult: i64) -> Self {
        self.with(PointLabel::pair(id), mult)
    }

    pub fn multiplicity(&self, label: &PointLabel) -> i64 {
        self.terms.get(label).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PointLabel, i64)> {
        self.terms.iter().map(|(k, v)| (k, *v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|&v| v >= 0)
    }

    /// Total degree; conjugate pairs count twice.
    pub fn degree(&self) -> i64 {
        self.terms.iter().map(|(k, v)| k.weight() * v).sum()
    }

    /// `deg_{C_i}(D)`: sum of multiplicities of the real points on circle `i`.
    pub fn degree_on(&self, circle: u32) -> i64 {
        self.terms
            .iter()
            .filter(|(k, _)| k.circle() == Some(circle))
            .map(|(_, v)| *v)
            .sum()
    }

    pub fn parity(&self) -> ParityVector {
        let mut p = ParityVector::zero(self.circles);
        for (k, v) in &self.terms {
            if let Some(c) = k.circle() {
                if v.rem_euclid(2) == 1 {
                    p.flip(c);
                }
            }
        }
        p
    }

    /// δ(D): number of circles carrying odd degree.
    pub fn delta(&self) -> u32 {
        self.parity().popcount()
    }

    /// Whether `other <= self` coefficientwise.
    pub fn contains(&self, other: &RealDivisor) -> bool {
        other
            .terms
            .iter()
            .all(|(k, v)| *v <= 0 || self.multiplicity(k) >= *v)
    }

    fn check_ambient(&self, other: &RealDivisor) {
        assert_eq!(
            self.circles, other.circles,
            "divisors on curves with different numbers of circles"
        );
    }
}

impl AddAssign<&RealDivisor> for RealDivisor {
    fn add_assign(&mut self, rhs: &RealDivisor) {
        self.check_ambient(rhs);
        for (k, v) in &rhs.terms {
            self.add_point(k.clone(), *v);
        }
    }
}

impl Add<&RealDivisor> for RealDivisor {
    type Output = RealDivisor;

    fn add(mut self, rhs: &RealDivisor) -> RealDivisor {
        self += rhs;
        self
    }
}

impl Add for RealDivisor {
    type Output = RealDivisor;

    fn add(self, rhs: RealDivisor) -> RealDivisor {
        self + &rhs
    }
}

impl Neg for RealDivisor {
    type Output = RealDivisor;

    fn neg(mut self) -> RealDivisor {
        for v in self.terms.values_mut() {
            *v = -*v;
        }
        self
    }
}

impl Sub<&RealDivisor> for RealDivisor {
    type Output = RealDivisor;

    fn sub(self, rhs: &RealDivisor) -> RealDivisor {
        self + &(-rhs.clone())
    }
}

impl Sub for RealDivisor {
    type Output = RealDivisor;

    fn sub(self, rhs: RealDivisor) -> RealDivisor {
        self - &rhs
    }
}

impl Mul<i64> for &RealDivisor {
    type Output = RealDivisor;

    fn mul(self, k: i64) -> RealDivisor {
        let mut out = RealDivisor::zero(self.circles);
        for (l, v) in &self.terms {
            out.add_point(l.clone(), v * k);
        }
        out
    }
}

pub(crate) fn write_terms(
    f: &mut fmt::Formatter<'_>,
    first: &mut bool,
    coeff: i64,
    atom: impl fmt::Display,
) -> fmt::Result {
    if coeff == 0 {
        return Ok(());
    }
    let mag = coeff.unsigned_abs();
    match (*first, coeff < 0) {
        (true, false) => write!(f, "{mag}*{atom}")?,
        (true, true) => write!(f, "-{mag}*{atom}")?,
        (false, false) => write!(f, " + {mag}*{atom}")?,
        (false, true) => write!(f, " - {mag}*{atom}")?,
    }
    *first = false;
    Ok(())
}

impl fmt::Display for RealDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, v) in &self.terms {
            write_terms(f, &mut first, *v, k)?;
        }
        Ok(())
    }
}

/// Failure to parse divisor or class notation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotationError {
    Empty,
    Unexpected {
        pos: usize,
        found: Option<char>,
    },
    BadNumber {
        pos: usize,
    },
    CircleOutOfRange {
        circle: u32,
        circles: u32,
    },
    /// `K` or `T` in a plain divisor.
    ClassTerm {
        pos: usize,
    },
}

impl fmt::Display for NotationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotationError::Empty => f.write_str("empty expression"),
            NotationError::Unexpected {
                pos,
                found: Some(c),
            } => {
                write!(f, "unexpected '{c}' at offset {pos}")
            }
            NotationError::Unexpected { pos, found: None } => {
                write!(f, "unexpected end of input at offset {pos}")
            }
            NotationError::BadNumber { pos } => write!(f, "bad integer at offset {pos}"),
            NotationError::CircleOutOfRange { circle, circles } => {
                write!(f, "circle {circle} outside 1..={circles}")
            }
            NotationError::ClassTerm { pos } => {
                write!(
                    f,
                    "class generator at offset {pos} is not allowed in a divisor"
                )
            }
        }
    }
}

impl core::error::Error for NotationError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Atom {
    Point(PointLabel),
    Canonical,
    Pencil,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn unexpected(&self) -> NotationError {
        NotationError::Unexpected {
            pos: self.pos,
            found: self.peek(),
        }
    }

    fn expect(&mut self, want: char) -> Result<(), NotationError> {
        self.skip_ws();
        if self.peek() == Some(want) {
            self.pos += want.len_utf8();
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }

    fn number(&mut self) -> Result<i64, NotationError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.unexpected());
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| NotationError::BadNumber { pos: start })
    }

    fn ident(&mut self) -> Result<String, NotationError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_' || c == '\'') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.unexpected());
        }
        Ok(self.src[start..self.pos].to_string())
    }

    fn atom(&mut self) -> Result<(usize, Atom), NotationError> {
        self.skip_ws();
        let at = self.pos;
        match self.bump() {
            Some('R') => {
                self.expect('(')?;
                let circle = self.number()?;
                let circle =
                    u32::try_from(circle).map_err(|_| NotationError::BadNumber { pos: at })?;
                self.expect(',')?;
                let id = self.ident()?;
                self.expect(')')?;
                Ok((at, Atom::Point(PointLabel::real(circle, id))))
            }
            Some('P') => {
                self.expect('(')?;
                let id = self.ident()?;
                self.expect(')')?;
                Ok((at, Atom::Point(PointLabel::pair(id))))
            }
            Some('K') => Ok((at, Atom::Canonical)),
            Some('T') => Ok((at, Atom::Pencil)),
            _ => {
                self.pos = at;
                Err(self.unexpected())
            }
        }
    }
}

/// Parses `[-] [c*]atom (± [c*]atom)*` or the literal `0`.
pub(crate) fn parse_terms(src: &str) -> Result<Vec<(i64, usize, Atom)>, NotationError> {
    let mut lx = Lexer { src, pos: 0 };
    lx.skip_ws();
    if lx.peek().is_none() {
        return Err(NotationError::Empty);
    }
    if src.trim() == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut first = true;
    loop {
        lx.skip_ws();
        let sign = match lx.peek() {
            Some('+') if !first => {
                lx.bump();
                1
            }
            Some('-') => {
                lx.bump();
                -1
            }
            None if !first => break,
            _ if first => 1,
            _ => return Err(lx.unexpected()),
        };
        first = false;
        lx.skip_ws();
        let coeff = if matches!(lx.peek(), Some(c) if c.is_ascii_digit()) {
            let c = lx.number()?;
            lx.expect('*')?;
            c
        } else {
            1
        };
        let (pos, atom) = lx.atom()?;
        out.push((sign * coeff, pos, atom));
    }
    Ok(out)
}

impl RealDivisor {
    /// Parses divisor notation on a curve with `circles` real components.
    pub fn parse(src: &str, circles: u32) -> Result<Self, NotationError> {
        let mut d = RealDivisor::zero(circles);
        for (c, pos, atom) in parse_terms(src)? {
            match atom {
                Atom::Point(p) => {
                    if let Some(circle) = p.circle() {
                        if circle == 0 || circle > circles {
                            return Err(NotationError::CircleOutOfRange { circle, circles });
                        }
                    }
                    d.add_point(p, c);
                }
                Atom::Canonical | Atom::Pencil => return Err(NotationError::ClassTerm { pos }),
            }
        }
        Ok(d)
    }
}

/// Divisor notation without an ambient circle count: the ambient is taken to
/// be the largest circle mentioned (at least 1).
impl FromStr for RealDivisor {
    type Err = NotationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let max = parse_terms(s)?
            .iter()
            .filter_map(|(_, _, a)| match a {
                Atom::Point(p) => p.circle(),
                _ => None,
            })
            .max()
            .unwrap_or(1)
            .max(1);
        RealDivisor::parse(s, max)
    }
}

/// Which clause of `δ(D) <= min(n, deg D)`, `δ(D) ≡ deg D (mod 2)` failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaBoundFailure {
    NotEffective,
    ExceedsCircles { delta: u32, circles: u32 },
    ExceedsDegree { delta: u32, degree: i64 },
    ParityMismatch { delta: u32, degree: i64 },
}

impl fmt::Display for DeltaBoundFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeltaBoundFailure::NotEffective => f.write_str("divisor is not effective"),
            DeltaBoundFailure::ExceedsCircles { delta, circles } => {
                write!(f, "delta {delta} exceeds circle count {circles}")
            }
            DeltaBoundFailure::ExceedsDegree { delta, degree } => {
                write!(f, "delta {delta} exceeds degree {degree}")
            }
            DeltaBoundFailure::ParityMismatch { delta, degree } => {
                write!(f, "delta {delta} and degree {degree} differ mod 2")
            }
        }
    }
}

/// Checks the δ bounds on an effective divisor.
pub fn check_delta_bounds(d: &RealDivisor) -> Result<(), DeltaBoundFailure> {
    if !d.is_effective() {
        return Err(DeltaBoundFailure::NotEffective);
    }
    let delta = d.delta();
    let degree = d.degree();
    if delta > d.circles() {
        return Err(DeltaBoundFailure::ExceedsCircles {
            delta,
            circles: d.circles(),
        });
    }
    if i64::from(delta) > degree {
        return Err(DeltaBoundFailure::ExceedsDegree { delta, degree });
    }
    if (i64::from(delta) - degree).rem_euclid(2) != 0 {
        return Err(DeltaBoundFailure::ParityMismatch { delta, degree });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn degrees() {
        assert_eq!(RealDivisor::zero(3).degree(), 0);
        let d = RealDivisor::zero(3).with_real(2, "a", 1).with_pair("x", 1);
        assert_eq!(d.degree(), 3);
        let d = RealDivisor::zero(3).with_real(1, "a", -1).with_pair("x", 2);
        assert_eq!(d.degree(), 3);
    }

    #[test]
    fn parities() {
        let d = RealDivisor::zero(3).with_real(2, "a", 1);
        assert_eq!(d.parity().bits(), [false, true, false]);
        let d = RealDivisor::zero(3).with_pair("x", 1);
        assert!(d.parity().is_zero());
        let d = RealDivisor::zero(3)
            .with_real(1, "p1", 1)
            .with_real(2, "p2", 1)
            .with_real(2, "p2'", 1);
        assert_eq!(d.parity().bits(), [true, false, false]);
        assert_eq!(d.delta(), 1);
    }

    #[test]
    fn deltas() {
        assert_eq!(RealDivisor::zero(2).delta(), 0);
        let d: RealDivisor = "1*R(1,t1) + 1*R(2,t2) + 1*R(3,t3)".parse().unwrap();
        assert_eq!(d.delta(), 3);
    }

    #[test]
    fn delta_bound_examples() {
        assert_eq!(
            check_delta_bounds(&RealDivisor::zero(2).with_real(1, "a", 2)),
            Ok(())
        );
        let d = RealDivisor::zero(2)
            .with_real(1, "a", 1)
            .with_real(2, "b", 1);
        assert_eq!(check_delta_bounds(&d), Ok(()));
        let d = RealDivisor::zero(2).with_real(1, "a", -1);
        assert_eq!(check_delta_bounds(&d), Err(DeltaBoundFailure::NotEffective));
    }

    #[test]
    fn notation_round_trip() {
        let d = RealDivisor::parse("3*R(1,a) + 1*P(x) - 2*R(2,b)", 2).unwrap();
        assert_eq!(d.degree(), 3 + 2 - 2);
        let text = d.to_string();
        assert_eq!(text, "3*R(1,a) - 2*R(2,b) + 1*P(x)");
        assert_eq!(RealDivisor::parse(&text, 2).unwrap(), d);
        assert_eq!(RealDivisor::zero(4).to_string(), "0");
        assert_eq!(RealDivisor::parse("0", 4).unwrap(), RealDivisor::zero(4));
        let neg = RealDivisor::parse("-R(1,a)", 1).unwrap();
        assert_eq!(neg.to_string(), "-1*R(1,a)");
    }

    #[test]
    fn notation_errors() {
        assert_eq!(RealDivisor::parse("", 1), Err(NotationError::Empty));
        assert_eq!(
            RealDivisor::parse("R(3,a)", 2),
            Err(NotationError::CircleOutOfRange {
                circle: 3,
                circles: 2
            })
        );
        assert!(matches!(
            RealDivisor::parse("2*K", 2),
            Err(NotationError::ClassTerm { .. })
        ));
        assert!(RealDivisor::parse("R(1,a) +", 2).is_err());
        assert!(RealDivisor::parse("R(1,a) R(1,b)", 2).is_err());
        assert!(RealDivisor::parse("Q(a)", 2).is_err());
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let a = RealDivisor::zero(2)
            .with_real(1, "a", 2)
            .with_real(2, "b", 1);
        let b = RealDivisor::zero(2).with_real(1, "a", 2);
        let d = a - b;
        assert_eq!(d, RealDivisor::zero(2).with_real(2, "b", 1));
        assert_eq!(d.terms().count(), 1);
    }

    fn arb_divisor(circles: u32) -> impl Strategy<Value = RealDivisor> {
        let label = prop_oneof![
            (1..=circles, 0u8..4).prop_map(|(c, i)| PointLabel::real(c, alloc::format!("x{i}"))),
            (0u8..3).prop_map(|i| PointLabel::pair(alloc::format!("c{i}"))),
        ];
        proptest::collection::vec((label, -3i64..=3), 0..8).prop_map(move |terms| {
            terms
                .into_iter()
                .fold(RealDivisor::zero(circles), |d, (l, m)| d.with(l, m))
        })
    }

    proptest! {
        #[test]
        fn parity_and_degree_are_additive(a in arb_divisor(4), b in arb_divisor(4)) {
            let sum = a.clone() + &b;
            prop_assert_eq!(sum.parity(), a.parity().xor(&b.parity()));
            prop_assert_eq!(sum.degree(), a.degree() + b.degree());
        }

        #[test]
        fn popcount_matches_degree_mod_two(a in arb_divisor(5)) {
            prop_assert_eq!((i64::from(a.delta()) - a.degree()).rem_euclid(2), 0);
        }

        #[test]
        fn notation_round_trips(a in arb_divisor(3)) {
            let text = a.to_string();
            let back = RealDivisor::parse(&text, 3).unwrap();
            prop_assert_eq!(back.to_string(), text);
            prop_assert_eq!(back, a);
        }

        #[test]
        fn pairs_only_have_zero_parity(ms in proptest::collection::vec(-4i64..=4, 0..5)) {
            let d = ms.iter().enumerate().fold(RealDivisor::zero(3), |d, (i, m)| {
                d.with_pair(&alloc::format!("c{i}"), *m)
            });
            prop_assert!(d.parity().is_zero());
        }
    }
}
