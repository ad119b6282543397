use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::{
    class_signature, is_pencil_shaped, pencil_member, pencil_parity, signature_with, ClassExpr,
    HarnessError, PencilForm,
};
use crate::cohomology::{h0_pencil_multiple, h0_twist, residual_degree, uv_intersection_possible};
use crate::components::{binomial, label_of, ComponentLabel};
use crate::curve::{Curve, CurveParams};
use crate::divisor::{ParityVector, PointLabel, RealDivisor};

/// Which construction to run. Labels are index lists of a component of
/// `X_s(ℝ)`, `s = 2d - g - 3r + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Case {
    /// `δ(T) = 1`, one circle: `U(ℝ)` and `V(ℝ)` meet.
    Case1,
    /// `δ(T) = 1`, several circles: a non-exceptional `V` component meets `U`.
    Case2(Vec<u32>),
    /// `δ(T) = 3`: every `V` component meets `U`.
    Case3(Vec<u32>),
    /// One base point: an exceptional `V` component cannot meet `U`.
    Obstruction(Vec<u32>),
}

impl Case {
    pub fn name(&self) -> &'static str {
        match self {
            Case::Case1 => "case1",
            Case::Case2(_) => "case2",
            Case::Case3(_) => "case3",
            Case::Obstruction(_) => "obstruction",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
}

/// Outcome of the exhaustive refutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    /// Number of pencil members in a divisor of `|(2d-g-3r)T|`.
    pub members: i64,
    /// Shape classes members are drawn from.
    pub shape_classes: usize,
    pub configurations: u64,
    pub witnesses: u64,
    pub bound: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofCertificate {
    pub case_name: &'static str,
    pub params: CurveParams,
    pub d: i64,
    pub r: i64,
    pub target: ComponentLabel,
    /// Witness on the `U` side, `D1 ∈ X_{d-3r}(ℝ)`.
    pub d1: Option<RealDivisor>,
    /// Witness on the `V` side, `D2 ∈ X_s(ℝ)`.
    pub d2: Option<RealDivisor>,
    /// Base points of `K - (g-d+2r-1)T` beyond `(2d-g-3r)T`.
    pub d3: RealDivisor,
    /// Pencil members whose sum plus `D3` is `D1 + D2`.
    pub members: Vec<RealDivisor>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub search: Option<SearchReport>,
}

impl ProofCertificate {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Clone, Copy)]
struct Regime {
    n: u32,
    d: i64,
    r: i64,
    /// degree of the `V` side
    s: i64,
    /// copies of `T`, `s - 1`
    copies: i64,
    base: i64,
}

fn strict_regime(curve: &Curve, d: i64, r: i64) -> Result<Regime, HarnessError> {
    let (g, m) = (curve.genus(), curve.maroni());
    if r < 1 || d >= g {
        return Err(HarnessError::Regime(format!(
            "need r >= 1 and d < g, got d={d} r={r}"
        )));
    }
    if g - d + r - 1 != m || m >= d - 2 * r - 1 {
        return Err(HarnessError::Regime(format!(
            "need g-d+r-1 = m < d-2r-1, got g-d+r-1={} m={m} d-2r-1={}",
            g - d + r - 1,
            d - 2 * r - 1
        )));
    }
    let copies = 2 * d - g - 3 * r;
    Ok(Regime {
        n: curve.circles() as u32,
        d,
        r,
        s: copies + 1,
        copies,
        base: 2 * g - 3 * d + 3 * r + 1,
    })
}

/// Canonical base-point divisor: one point on each circle where the required
/// parity is odd, the rest on `C_1`.
fn base_divisor(curve: &Curve, reg: &Regime) -> Result<(RealDivisor, String), HarnessError> {
    // parity(K - (g-d+2r-1)T) + parity((2d-g-3r)T) = (d-r-1)·parity(T)
    let need = pencil_parity(curve).scaled(reg.d - reg.r - 1);
    let odd = need.odd_circles();
    let rest = reg.base - odd.len() as i64;
    if rest < 0 || rest % 2 != 0 {
        return Err(HarnessError::Inconsistent);
    }
    let mut d3 = RealDivisor::zero(reg.n);
    let mut k = 0;
    for c in odd
        .iter()
        .copied()
        .chain(core::iter::repeat_n(1, rest as usize))
    {
        k += 1;
        d3.add_point(PointLabel::real(c, format!("b{k}")), 1);
    }
    let note = format!(
        "D3 placement: {} base point(s), one on each of circles {:?}, remaining {} on C_1",
        reg.base, odd, rest
    );
    Ok((d3, note))
}

fn sum(n: u32, parts: &[RealDivisor]) -> RealDivisor {
    parts.iter().fold(RealDivisor::zero(n), |acc, p| acc + p)
}

fn standard_checks(
    curve: &Curve,
    reg: &Regime,
    target: &ComponentLabel,
    members: &[RealDivisor],
    d1: &RealDivisor,
    d2: &RealDivisor,
    d3: &RealDivisor,
) -> Vec<Check> {
    let g = curve.genus();
    let pool = ClassExpr::new(0, reg.copies, d3.clone());
    let pool_sig = class_signature(curve, &pool);
    let residual = ClassExpr::new(1, -(g - reg.d + 2 * reg.r - 1), RealDivisor::zero(reg.n));
    let parity = d1.parity().xor(&d2.parity());
    vec![
        Check {
            name: "d1-effective",
            passed: d1.is_effective(),
        },
        Check {
            name: "d2-effective",
            passed: d2.is_effective(),
        },
        Check {
            name: "d3-effective",
            passed: d3.is_effective() && d3.degree() == reg.base,
        },
        Check {
            name: "d1-degree",
            passed: d1.degree() == reg.d - 3 * reg.r,
        },
        Check {
            name: "d2-degree",
            passed: d2.degree() == reg.s,
        },
        Check {
            name: "degree-balance",
            passed: d1.degree() + d2.degree() == 3 * reg.copies + d3.degree(),
        },
        Check {
            name: "parity-balance",
            passed: parity == pool_sig.parity,
        },
        Check {
            name: "residual-class",
            passed: class_signature(curve, &residual) == pool_sig,
        },
        Check {
            name: "members-in-pencil",
            passed: members.len() as i64 == reg.copies
                && members.iter().all(|m| is_pencil_shaped(curve, m)),
        },
        Check {
            name: "pencil-expansion",
            passed: d1.clone() + d2 == sum(reg.n, members) + d3,
        },
        Check {
            name: "target-label",
            passed: label_of(d2).as_ref() == Ok(target),
        },
    ]
}

struct Built {
    members: Vec<RealDivisor>,
    d1: RealDivisor,
    d2: RealDivisor,
    notes: Vec<String>,
}

fn repeat(m: &RealDivisor, k: i64) -> impl Iterator<Item = RealDivisor> + '_ {
    core::iter::repeat_n(m.clone(), k.max(0) as usize)
}

/// Single real point on circle `circle` of an `n`-circle curve.
fn point(n: u32, circle: u32, id: &str) -> RealDivisor {
    RealDivisor::zero(n).with_real(circle, id, 1)
}

/// `D2 = (c-1)q_1 + q_2 + q_3` from the all-on-`C_1` member, `D1` the rest.
fn one_circle_split(curve: &Curve, reg: &Regime, d3: &RealDivisor) -> Result<Built, HarnessError> {
    let n = reg.n;
    let m1 = pencil_member(curve, PencilForm::AllRealOn(1), "1")?;
    let (p, q, qt) = (point(n, 1, "p1"), point(n, 1, "q1"), point(n, 1, "qt1"));
    let d2 = (&p * (reg.copies - 1)) + &q + &qt;
    let d1 = (&m1 * reg.copies) + d3 - &d2;
    Ok(Built {
        members: repeat(&m1, reg.copies).collect(),
        d1,
        d2,
        notes: vec![format!("T ~ {m1}")],
    })
}

fn build_case2(
    curve: &Curve,
    reg: &Regime,
    labels: &[u32],
    d3: &RealDivisor,
) -> Result<Built, HarnessError> {
    let n = reg.n;
    let (s, c) = (reg.s, reg.copies);
    let l = labels.len() as i64;
    let member = |i: u32| pencil_member(curve, PencilForm::AllRealOn(i), &i.to_string());
    let p = |i: u32| point(n, 1, &format!("p{i}"));
    let q = |i: u32| point(n, i, &format!("q{i}"));
    let qt = |i: u32| point(n, i, &format!("qt{i}"));

    match labels {
        [] => {
            // p_2 + q_2 + q̃_2 repeated; D2 = q_2 + q̃_2 + (s-2)p_2
            let m2 = member(2)?;
            let d2 = q(2) + &qt(2) + &(&p(2) * (s - 2));
            let d1 = p(2) + &(&(q(2) + &qt(2)) * (c - 1)) + d3;
            Ok(Built {
                members: repeat(&m2, c).collect(),
                d1,
                d2,
                notes: vec![String::from(
                    "empty label: all copies of T taken as p_2 + q_2 + q~_2",
                )],
            })
        }
        [1] => {
            let mut b = one_circle_split(curve, reg, d3)?;
            b.notes.push(String::from(
                "label (1): all-on-C_1 member, D2 = (c-1)p_1 + q_1 + q~_1",
            ));
            Ok(b)
        }
        [j1, ..] if *j1 != 1 => {
            let jl = *labels.last().unwrap();
            let mut members: Vec<RealDivisor> = Vec::new();
            for &j in labels {
                members.push(member(j)?);
            }
            members.extend(repeat(&member(jl)?, c - l));
            let mut d2 = &p(jl) * (s - l);
            let mut d1 = d3.clone() - &p(jl) + &(&(q(jl) + &qt(jl)) * (c - l));
            for &j in labels {
                d2 += &q(j);
                d1 = d1 + &p(j) + &qt(j);
            }
            Ok(Built {
                members,
                d1,
                d2,
                notes: vec![format!(
                    "j_1 != 1, l = {l} < s = {s}: (2d-g-3r-l) copies of p_{jl} + q_{jl} + q~_{jl}"
                )],
            })
        }
        [_, rest @ ..] => {
            let jl = *labels.last().unwrap();
            let mut members: Vec<RealDivisor> = Vec::new();
            for &j in rest {
                members.push(member(j)?);
            }
            members.extend(repeat(&member(jl)?, s - l));
            let mut d2 = &p(jl) * (s + 1 - l);
            let mut d1 = d3.clone() - &p(jl) + &(&(q(jl) + &qt(jl)) * (s - l));
            for &j in rest {
                d2 += &q(j);
                d1 = d1 + &p(j) + &qt(j);
            }
            Ok(Built {
                members,
                d1,
                d2,
                notes: vec![format!(
                    "j_1 = 1, l = {l}: (s-l) copies of p_{jl} + q_{jl} + q~_{jl}, C_1 carried by p_{jl}"
                )],
            })
        }
    }
}

fn build_case3(
    curve: &Curve,
    reg: &Regime,
    labels: &[u32],
    d3: &RealDivisor,
) -> Result<Built, HarnessError> {
    let n = reg.n;
    let c = reg.copies;
    let triple = pencil_member(curve, PencilForm::Triple, "")?;
    let t = |i: u32| point(n, i, &format!("t{i}"));
    let members: Vec<RealDivisor> = repeat(&triple, c).collect();
    let pool = sum(n, &members) + d3;
    let mut notes = vec![format!("T ~ {triple}")];
    let d2 = match labels {
        // s even
        [i, j] => &t(*i) * c + &t(*j),
        [] if c >= 2 => &t(1) * (c - 1) + &(&t(2) * 2),
        [] => {
            // a single copy of T: pair t_1 with a base point on C_1
            let b = d3
                .terms()
                .find(|(p, _)| p.circle() == Some(1))
                .map(|(p, _)| p.clone());
            let Some(b) = b else {
                return Err(HarnessError::Regime(String::from(
                    "empty label with one copy of T needs a base point on C_1",
                )));
            };
            notes.push(format!("one copy of T: D2 = t1 + {b}"));
            t(1).with(b, 1)
        }
        // s odd
        [i] => {
            let j = if *i == 1 { 2 } else { 1 };
            &t(j) * c + &t(*i)
        }
        [1, 2, 3] => &t(1) * (c - 1) + &t(2) + &t(3),
        _ => {
            return Err(HarnessError::LabelKind(format!(
                "{labels:?} is not a component label for three circles"
            )))
        }
    };
    let d1 = pool - &d2;
    Ok(Built {
        members,
        d1,
        d2,
        notes,
    })
}

/// Runs one of the constructive cases and checks it.
///
/// All cases require `g - d + r - 1 = m < d - 2r - 1`. A failing check yields
/// a failing certificate, not an error.
pub fn run_case(
    curve: &Curve,
    d: i64,
    r: i64,
    case: &Case,
) -> Result<ProofCertificate, HarnessError> {
    let reg = strict_regime(curve, d, r)?;
    let n = reg.n;
    let dt = curve.delta_t();
    if dt == 3 && reg.base == 1 {
        return Err(HarnessError::Inconsistent);
    }
    let (d3, placement) = base_divisor(curve, &reg)?;

    let target = match case {
        Case::Case1 => {
            if dt != 1 || n != 1 {
                return Err(HarnessError::Regime(String::from(
                    "case 1 needs deltaT = 1 and n = 1",
                )));
            }
            let idx = if reg.s % 2 == 1 { vec![1] } else { vec![] };
            ComponentLabel::new(idx, reg.s, n)?
        }
        Case::Case2(idx) => {
            if dt != 1 || n < 2 {
                return Err(HarnessError::Regime(String::from(
                    "case 2 needs deltaT = 1 and n > 1",
                )));
            }
            let label = ComponentLabel::new(idx.clone(), reg.s, n)?;
            if is_exceptional(&label) {
                return Err(HarnessError::LabelKind(format!("{label} is exceptional")));
            }
            label
        }
        Case::Case3(idx) => {
            if dt != 3 {
                return Err(HarnessError::Regime(String::from(
                    "case 3 needs deltaT = 3",
                )));
            }
            ComponentLabel::new(idx.clone(), reg.s, n)?
        }
        Case::Obstruction(idx) => {
            if dt != 1 || reg.base != 1 {
                return Err(HarnessError::Regime(format!(
                    "obstruction needs deltaT = 1 and one base point, got {}",
                    reg.base
                )));
            }
            let label = ComponentLabel::new(idx.clone(), reg.s, n)?;
            if !is_exceptional(&label) {
                return Err(HarnessError::LabelKind(format!(
                    "{label} is not exceptional"
                )));
            }
            return Ok(obstruction(curve, &reg, label, d3, placement));
        }
    };

    let built = match case {
        Case::Case1 => one_circle_split(curve, &reg, &d3)?,
        Case::Case2(idx) => build_case2(curve, &reg, idx, &d3)?,
        Case::Case3(idx) => build_case3(curve, &reg, idx, &d3)?,
        Case::Obstruction(_) => unreachable!(),
    };
    let checks = standard_checks(
        curve,
        &reg,
        &target,
        &built.members,
        &built.d1,
        &built.d2,
        &d3,
    );
    let mut notes = vec![placement];
    notes.extend(built.notes);
    Ok(ProofCertificate {
        case_name: case.name(),
        params: curve.params(),
        d,
        r,
        target,
        d1: Some(built.d1),
        d2: Some(built.d2),
        d3,
        members: built.members,
        checks,
        notes,
        search: None,
    })
}

/// `l = s` pseudo-lines, none of them `C_1`.
pub fn is_exceptional(label: &ComponentLabel) -> bool {
    label.len() as i64 == label.degree() && label.indices().first().is_some_and(|&j| j != 1)
}

/// Exhaustive refutation for an exceptional label with one base point `p`.
///
/// If `D1 + D2 ∼ (2d-g-3r)T + p` with `D2` in the exceptional component, `D2`
/// misses `C_1 ∋ p`, so `D = D1 - p` is effective and `D + D2 ∈ |(2d-g-3r)T|`.
/// That linear system is composed of the pencil (`h⁰ = copies + 1`), so
/// `D + D2` is a sum of `copies` pencil members. `δ(D2) = deg(D2)` forces one
/// point on each circle of the label. The search runs over every multiset of
/// member shapes and counts those that supply such a `D2`.
fn obstruction(
    curve: &Curve,
    reg: &Regime,
    target: ComponentLabel,
    d3: RealDivisor,
    placement: String,
) -> ProofCertificate {
    let labels = target.indices().to_vec();
    let l = labels.len();
    // classes: AllRealOn(j) for each j in the label, plus one class for every
    // shape with no real point on a label circle (AllRealOn(1), AllRealOn(i)
    // off the label, WithPair)
    let classes = l + 1;
    let mut configurations = 0u64;
    let mut witnesses = 0u64;
    let mut counts = vec![0i64; classes];
    for_each_multiset(classes, reg.copies, &mut counts, 0, &mut |cnt| {
        configurations += 1;
        // a real point on each label circle, not on C_1, from some member
        if cnt[..l].iter().all(|&k| k >= 1) {
            witnesses += 1;
        }
    });
    let expected = binomial_u64(l as i64 + reg.copies, reg.copies);

    let pool = ClassExpr::new(0, reg.copies, d3.clone());
    let residual = ClassExpr::new(
        1,
        -(curve.genus() - reg.d + 2 * reg.r - 1),
        RealDivisor::zero(reg.n),
    );
    let base_on_c1 = d3.degree() == 1 && d3.degree_on(1) == 1;
    let checks = vec![
        Check {
            name: "single-base-point-on-c1",
            passed: base_on_c1,
        },
        Check {
            name: "residual-class",
            passed: class_signature(curve, &residual) == class_signature(curve, &pool),
        },
        Check {
            name: "pencil-multiple-composed",
            passed: h0_pencil_multiple(curve, reg.copies) == reg.copies + 1,
        },
        Check {
            name: "d2-avoids-base-point",
            passed: !labels.contains(&1) && target.len() as i64 == target.degree(),
        },
        Check {
            name: "search-complete",
            passed: Some(configurations) == expected,
        },
        Check {
            name: "no-witness",
            passed: witnesses == 0,
        },
    ];
    let bound = format!(
        "deg(D + D2) = 3(2d-g-3r) = {}; multisets of {} pencil members over {} shape classes",
        3 * reg.copies,
        reg.copies,
        classes
    );
    ProofCertificate {
        case_name: "obstruction",
        params: curve.params(),
        d: reg.d,
        r: reg.r,
        target,
        d1: None,
        d2: None,
        d3,
        members: Vec::new(),
        checks,
        notes: vec![placement, String::from("p = R(1,b1)")],
        search: Some(SearchReport {
            members: reg.copies,
            shape_classes: classes,
            configurations,
            witnesses,
            bound,
        }),
    }
}

fn binomial_u64(n: i64, k: i64) -> Option<u64> {
    if n <= crate::components::MAX_CIRCLES {
        u64::try_from(binomial(n, k)).ok()
    } else {
        None
    }
}

/// Calls `f` with every vector of `classes` non-negative counts summing to
/// `total`.
pub(crate) fn for_each_multiset(
    classes: usize,
    total: i64,
    counts: &mut [i64],
    at: usize,
    f: &mut impl FnMut(&[i64]),
) {
    if at + 1 == classes {
        counts[at] = total;
        f(counts);
        return;
    }
    for k in 0..=total {
        counts[at] = k;
        for_each_multiset(classes, total - k, counts, at + 1, f);
    }
}

/// Evidence that `U(ℝ)` and `V(ℝ)` are disjoint when `m > d - 2r - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisjointnessCertificate {
    pub params: CurveParams,
    pub d: i64,
    pub r: i64,
    pub residual_degree: i64,
    pub residual_h0: i64,
    pub checks: Vec<Check>,
}

impl DisjointnessCertificate {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// A meeting point would give effective `D1 + D2 ∼ K - (g-d+2r-1)T`; this
/// certifies that class has no sections.
///
/// Requires `r >= 1`, `d < g`, `s >= 0`, `0 < g-d+r-1 <= m` and
/// `m > d - 2r - 1`.
pub fn disjointness_certificate(
    curve: &Curve,
    d: i64,
    r: i64,
) -> Result<DisjointnessCertificate, HarnessError> {
    let (g, m) = (curve.genus(), curve.maroni());
    let s = 2 * d - g - 3 * r + 1;
    let e = g - d + r - 1;
    if r < 1 || d >= g || s < 0 || !(0 < e && e <= m) || m <= d - 2 * r - 1 {
        return Err(HarnessError::Regime(format!(
            "need r >= 1, d < g, s >= 0, 0 < g-d+r-1 <= m < d-2r-1+1; got d={d} r={r}"
        )));
    }
    let twist = h0_twist(curve, -(g - d + 2 * r - 1));
    let deg = residual_degree(g, d, r);
    let checks = vec![
        Check {
            name: "residual-degree",
            passed: twist.degree == deg,
        },
        Check {
            name: "witness-degrees",
            passed: (d - 3 * r) + s == deg,
        },
        Check {
            name: "residual-h0-zero",
            passed: twist.h0 == 0,
        },
        Check {
            name: "criterion-agrees",
            passed: !uv_intersection_possible(curve, d, r),
        },
    ];
    Ok(DisjointnessCertificate {
        params: curve.params(),
        d,
        r,
        residual_degree: deg,
        residual_h0: twist.h0,
        checks,
    })
}

/// `δ` of both sides of `K - (g-d+2r-1)T ∼ (2d-g-3r)T + p` under one
/// hypothesis on `δ(T)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Hypothesis {
    pub delta_t: i64,
    pub residual_delta: u32,
    pub pencil_delta: u32,
    /// Adding one real point moves δ by exactly one.
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaParityVerdict {
    pub residual_multiple: i64,
    pub pencil_multiple: i64,
    pub hypotheses: [Hypothesis; 2],
    /// The only consistent value of `δ(T)`, if exactly one is.
    pub forced: Option<i64>,
}

impl DeltaParityVerdict {
    pub fn delta_one_forced(&self) -> bool {
        self.forced == Some(1)
    }
}

/// Parity argument showing a single base point rules out `δ(T) = 3`.
///
/// Requires `g - d + r - 1 = m <= d - 2r - 1` and `2g - 3d + 3r + 1 = 1`.
pub fn delta_parity_check(
    g: i64,
    m: i64,
    d: i64,
    r: i64,
) -> Result<DeltaParityVerdict, HarnessError> {
    if g - d + r - 1 != m || m > d - 2 * r - 1 || 2 * g - 3 * d + 3 * r + 1 != 1 {
        return Err(HarnessError::Regime(format!(
            "need g-d+r-1 = m <= d-2r-1 and 2g-3d+3r+1 = 1, got g={g} m={m} d={d} r={r}"
        )));
    }
    let residual_multiple = g - d + 2 * r - 1;
    let pencil_multiple = 2 * d - g - 3 * r;
    let hyp = |delta_t: i64| {
        let pencil = if delta_t == 3 {
            ParityVector::ones(3)
        } else {
            ParityVector::unit(3, 1)
        };
        let zero = RealDivisor::zero(3);
        let lhs = signature_with(
            g,
            &pencil,
            &ClassExpr::new(1, -residual_multiple, zero.clone()),
        );
        let rhs = signature_with(g, &pencil, &ClassExpr::new(0, pencil_multiple, zero));
        let (a, b) = (lhs.parity.popcount(), rhs.parity.popcount());
        Hypothesis {
            delta_t,
            residual_delta: a,
            pencil_delta: b,
            consistent: a.abs_diff(b) == 1,
        }
    };
    let hypotheses = [hyp(1), hyp(3)];
    let ok: Vec<i64> = hypotheses
        .iter()
        .filter(|h| h.consistent)
        .map(|h| h.delta_t)
        .collect();
    Ok(DeltaParityVerdict {
        residual_multiple,
        pencil_multiple,
        hypotheses,
        forced: if ok.len() == 1 { Some(ok[0]) } else { None },
    })
}
