//! Serializable records for every command. Field order is the JSON order.

use serde::{Deserialize, Serialize};
use trigbn_core::harness::{
    DeltaParityVerdict, DisjointnessCertificate, ProofCertificate, Signature,
};
use trigbn_core::{Curve, CurveParams, LocusClassification, LocusCount, RegionPoint, Rejection};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationRecord {
    pub g: i64,
    pub n: i64,
    #[serde(rename = "deltaT")]
    pub delta_t: i64,
    pub m: i64,
    pub valid: bool,
    pub violations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moduli_dim: Option<i64>,
}

impl ValidationRecord {
    pub fn from_result(params: CurveParams, result: &Result<Curve, Rejection>) -> Self {
        let mut rec = ValidationRecord {
            g: params.genus,
            n: params.circles,
            delta_t: params.delta_t,
            m: params.maroni,
            valid: result.is_ok(),
            violations: Vec::new(),
            a: None,
            moduli_dim: None,
        };
        match result {
            Ok(curve) => {
                let inv = curve.derive();
                rec.a = Some(inv.co_maroni);
                rec.moduli_dim = Some(inv.moduli_dim);
            }
            Err(rej) => {
                rec.violations = rej.violations.iter().map(|v| v.name().to_owned()).collect()
            }
        }
        rec
    }
}

/// Result of `classify`. `value` is present for exact counts, `lower` and
/// `upper` for bounds, neither for an empty locus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub d: i64,
    pub r: i64,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<u128>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower: Option<u128>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper: Option<u128>,
    pub provenance: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Value, lower and upper fields for a count.
pub fn count_fields(count: &LocusCount) -> (Option<u128>, Option<u128>, Option<u128>) {
    match *count {
        LocusCount::Empty => (None, None, None),
        LocusCount::Exact(v) => (Some(v), None, None),
        LocusCount::Bounds { lower, upper } => (None, Some(lower), Some(upper)),
    }
}

/// The genus-5 family with `m = 1, d = 4, r = 1` sits between `2n - 1` and
/// `2n` depending on the plane quintic model, which the invariants do not
/// record.
pub fn genus_five_note(curve: &Curve, d: i64, r: i64) -> Option<String> {
    if (curve.genus(), curve.maroni(), d, r) != (5, 1, 4, 1) {
        return None;
    }
    let n = curve.circles();
    Some(format!(
        "for a plane quintic model with a cusp or a real node the count is 2n-1 = {}; \
         with a complex node it is 2n = {}",
        2 * n - 1,
        2 * n
    ))
}

impl ClassificationRecord {
    pub fn new(curve: &Curve, c: &LocusClassification) -> Self {
        let (value, lower, upper) = count_fields(&c.count);
        ClassificationRecord {
            d: c.d,
            r: c.r,
            kind: c.count.name().to_owned(),
            value,
            lower,
            upper,
            provenance: c.provenance.iter().map(|s| (*s).to_owned()).collect(),
            note: genus_five_note(curve, c.d, c.r),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionRecord {
    pub g: i64,
    pub m: i64,
    pub points: Vec<RegionPointRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionPointRecord {
    pub d: i64,
    pub r: i64,
    pub base_points: i64,
    pub tag: String,
}

impl From<&RegionPoint> for RegionPointRecord {
    fn from(p: &RegionPoint) -> Self {
        RegionPointRecord {
            d: p.d,
            r: p.r,
            base_points: p.base_points,
            tag: p.tag.name().to_owned(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct H0Record {
    pub g: i64,
    pub m: i64,
    pub k: i64,
    pub degree: i64,
    pub h0: i64,
    pub summands: [i64; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureRecord {
    pub expr: String,
    pub degree: i64,
    pub parity: Vec<u8>,
    pub delta: u32,
}

impl SignatureRecord {
    pub fn new(expr: String, sig: &Signature) -> Self {
        SignatureRecord {
            expr,
            degree: sig.degree,
            parity: sig.parity.bits().iter().map(|&b| u8::from(b)).collect(),
            delta: sig.parity.popcount(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub members: i64,
    pub shape_classes: usize,
    pub configurations: u64,
    pub witnesses: u64,
    pub bound: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub case: String,
    pub g: i64,
    pub n: i64,
    #[serde(rename = "deltaT")]
    pub delta_t: i64,
    pub m: i64,
    pub d: i64,
    pub r: i64,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d1: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d2: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d3: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub members: Vec<String>,
    pub checks: Vec<CheckRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchRecord>,
}

fn checks<'a>(it: impl IntoIterator<Item = &'a trigbn_core::harness::Check>) -> Vec<CheckRecord> {
    it.into_iter()
        .map(|c| CheckRecord {
            name: c.name.to_owned(),
            passed: c.passed,
        })
        .collect()
}

impl From<&ProofCertificate> for CertificateRecord {
    fn from(c: &ProofCertificate) -> Self {
        CertificateRecord {
            case: c.case_name.to_owned(),
            g: c.params.genus,
            n: c.params.circles,
            delta_t: c.params.delta_t,
            m: c.params.maroni,
            d: c.d,
            r: c.r,
            passed: c.passed(),
            target: Some(c.target.to_string()),
            d1: c.d1.as_ref().map(ToString::to_string),
            d2: c.d2.as_ref().map(ToString::to_string),
            d3: Some(c.d3.to_string()),
            members: c.members.iter().map(ToString::to_string).collect(),
            checks: checks(&c.checks),
            notes: c.notes.clone(),
            search: c.search.as_ref().map(|s| SearchRecord {
                members: s.members,
                shape_classes: s.shape_classes,
                configurations: s.configurations,
                witnesses: s.witnesses,
                bound: s.bound.clone(),
            }),
        }
    }
}

impl From<&DisjointnessCertificate> for CertificateRecord {
    fn from(c: &DisjointnessCertificate) -> Self {
        CertificateRecord {
            case: "disjoint".to_owned(),
            g: c.params.genus,
            n: c.params.circles,
            delta_t: c.params.delta_t,
            m: c.params.maroni,
            d: c.d,
            r: c.r,
            passed: c.passed(),
            target: None,
            d1: None,
            d2: None,
            d3: None,
            members: Vec::new(),
            checks: checks(&c.checks),
            notes: vec![format!(
                "K-(g-d+2r-1)T has degree {} and h0 = {}",
                c.residual_degree, c.residual_h0
            )],
            search: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisRecord {
    #[serde(rename = "deltaT")]
    pub delta_t: i64,
    pub residual_delta: u32,
    pub pencil_delta: u32,
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaParityRecord {
    pub g: i64,
    pub m: i64,
    pub d: i64,
    pub r: i64,
    pub residual_multiple: i64,
    pub pencil_multiple: i64,
    pub hypotheses: Vec<HypothesisRecord>,
    pub verdict: String,
}

impl DeltaParityRecord {
    pub fn new(g: i64, m: i64, d: i64, r: i64, v: &DeltaParityVerdict) -> Self {
        DeltaParityRecord {
            g,
            m,
            d,
            r,
            residual_multiple: v.residual_multiple,
            pencil_multiple: v.pencil_multiple,
            hypotheses: v
                .hypotheses
                .iter()
                .map(|h| HypothesisRecord {
                    delta_t: h.delta_t,
                    residual_delta: h.residual_delta,
                    pencil_delta: h.pencil_delta,
                    consistent: h.consistent,
                })
                .collect(),
            verdict: match v.forced {
                Some(t) => format!("deltaT={t} forced"),
                None => "no single value forced".to_owned(),
            },
        }
    }
}
