//! Re-executable divisor constructions behind the intersection claims.
//!
//! Linear equivalence is not decidable at this level of abstraction. What is
//! available are its two computable invariants, the degree and the parity
//! vector (principal divisors have even degree on every circle), together
//! with the explicit relations the constructions use:
//!
//! * `T ∼` any [`pencil_member`],
//! * `K - (g-d+2r-1)T ∼ (2d-g-3r)T + D3` with `D3` the base points.
//!
//! Equal signatures are necessary for linear equivalence, not sufficient, so
//! a certificate checks the signature balance *and* that `D1 + D2` is
//! literally the recorded sum of pencil members plus `D3`.

mod cases;

pub use cases::{
    delta_parity_check, disjointness_certificate, is_exceptional, run_case, Case, Check,
    DeltaParityVerdict, DisjointnessCertificate, Hypothesis, ProofCertificate, SearchReport,
};

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::curve::Curve;
use crate::divisor::{parse_terms, write_terms, Atom, NotationError, ParityVector, RealDivisor};

/// `κ·K + τ·T + remainder`, a formal class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassExpr {
    pub kappa: i64,
    pub tau: i64,
    pub remainder: RealDivisor,
}

impl ClassExpr {
    pub fn new(kappa: i64, tau: i64, remainder: RealDivisor) -> Self {
        ClassExpr {
            kappa,
            tau,
            remainder,
        }
    }

    /// Parses e.g. `K - 2*T + 1*R(1,a) + 1*P(x)` on a curve with `circles`
    /// circles.
    pub fn parse(src: &str, circles: u32) -> Result<Self, NotationError> {
        let mut e = ClassExpr::new(0, 0, RealDivisor::zero(circles));
        for (c, _, atom) in parse_terms(src)? {
            match atom {
                Atom::Canonical => e.kappa += c,
                Atom::Pencil => e.tau += c,
                Atom::Point(p) => {
                    if let Some(circle) = p.circle() {
                        if circle == 0 || circle > circles {
                            return Err(NotationError::CircleOutOfRange { circle, circles });
                        }
                    }
                    e.remainder.add_point(p, c);
                }
            }
        }
        Ok(e)
    }
}

impl fmt::Display for ClassExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.kappa == 0 && self.tau == 0 && self.remainder.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        write_terms(f, &mut first, self.kappa, "K")?;
        write_terms(f, &mut first, self.tau, "T")?;
        for (p, c) in self.remainder.terms() {
            write_terms(f, &mut first, c, p)?;
        }
        Ok(())
    }
}

/// Degree and parity vector: the invariants of a class under linear
/// equivalence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    pub degree: i64,
    pub parity: ParityVector,
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "degree {} parity {}", self.degree, self.parity)
    }
}

/// Parity vector of the trigonal pencil: `C_1` is always a pseudo-line;
/// with `δ(T) = 3` every circle is.
pub fn pencil_parity(curve: &Curve) -> ParityVector {
    let n = curve.circles() as u32;
    if curve.delta_t() == 3 {
        ParityVector::ones(n)
    } else {
        ParityVector::unit(n, 1)
    }
}

pub(crate) fn signature_with(genus: i64, pencil: &ParityVector, e: &ClassExpr) -> Signature {
    // δ(K) = 0, so K contributes degree only
    Signature {
        degree: e.kappa * (2 * genus - 2) + 3 * e.tau + e.remainder.degree(),
        parity: pencil.scaled(e.tau).xor(&e.remainder.parity()),
    }
}

pub fn class_signature(curve: &Curve, e: &ClassExpr) -> Signature {
    signature_with(curve.genus(), &pencil_parity(curve), e)
}

/// Shape of an effective divisor of the pencil `T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PencilForm {
    /// `p + q + q̃` with `p ∈ C_1` and `q, q̃ ∈ C_i` (`i = 1` allowed).
    AllRealOn(u32),
    /// `p + q + q̄` with `p ∈ C_1` and a conjugate pair.
    WithPair,
    /// `t_1 + t_2 + t_3`, one point per circle (only when `δ(T) = 3`).
    Triple,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HarnessError {
    /// Parameters outside the regime the construction applies to.
    Regime(String),
    /// The pencil form does not exist for this `δ(T)`.
    Form {
        form: PencilForm,
        delta_t: i64,
    },
    Label(crate::components::LabelError),
    /// Case 2 asked for an exceptional label, or the obstruction for a
    /// non-exceptional one.
    LabelKind(String),
    /// A single base point with `δ(T) = 3`.
    Inconsistent,
}

impl fmt::Display for HarnessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HarnessError::Regime(s) => write!(f, "precondition violated: {s}"),
            HarnessError::Form { form, delta_t } => {
                write!(
                    f,
                    "pencil form {form:?} does not exist when deltaT = {delta_t}"
                )
            }
            HarnessError::Label(e) => write!(f, "bad target label: {e}"),
            HarnessError::LabelKind(s) => write!(f, "wrong kind of label: {s}"),
            HarnessError::Inconsistent => f.write_str(
                "inconsistent parameters: a single base point of K-(g-d+2r-1)T forces δ(T)=1",
            ),
        }
    }
}

impl core::error::Error for HarnessError {}

impl From<crate::components::LabelError> for HarnessError {
    fn from(e: crate::components::LabelError) -> Self {
        HarnessError::Label(e)
    }
}

/// An effective divisor of the pencil of the given shape, with point names
/// suffixed by `tag` so that members built with different tags share no
/// points.
///
/// Names: `p{tag}`, `q{tag}`, `qt{tag}` for [`PencilForm::AllRealOn`],
/// `p{tag}` and `c{tag}` for [`PencilForm::WithPair`], `t1{tag}`..`t3{tag}`
/// for [`PencilForm::Triple`].
pub fn pencil_member(
    curve: &Curve,
    form: PencilForm,
    tag: &str,
) -> Result<RealDivisor, HarnessError> {
    let n = curve.circles() as u32;
    let zero = RealDivisor::zero(n);
    let bad = || HarnessError::Form {
        form,
        delta_t: curve.delta_t(),
    };
    match (curve.delta_t(), form) {
        (1, PencilForm::AllRealOn(i)) if (1..=n).contains(&i) => Ok(zero
            .with_real(1, &format!("p{tag}"), 1)
            .with_real(i, &format!("q{tag}"), 1)
            .with_real(i, &format!("qt{tag}"), 1)),
        (1, PencilForm::WithPair) => Ok(zero
            .with_real(1, &format!("p{tag}"), 1)
            .with_pair(&format!("c{tag}"), 1)),
        (3, PencilForm::Triple) => {
            Ok((1..=3).fold(zero, |d, i| d.with_real(i, &format!("t{i}{tag}"), 1)))
        }
        _ => Err(bad()),
    }
}

/// Whether an effective divisor has one of the shapes a pencil member can
/// take.
pub fn is_pencil_shaped(curve: &Curve, d: &RealDivisor) -> bool {
    if !d.is_effective() || d.degree() != 3 {
        return false;
    }
    let mut on: Vec<u32> = Vec::new();
    let mut pairs = 0;
    for (p, c) in d.terms() {
        match p.circle() {
            Some(circle) => on.extend(core::iter::repeat_n(circle, c as usize)),
            None => pairs += c,
        }
    }
    on.sort_unstable();
    match curve.delta_t() {
        3 => on == [1, 2, 3],
        _ => match (pairs, on.as_slice()) {
            (1, [1]) => true,
            (0, [1, a, b]) => a == b,
            _ => false,
        },
    }
}
