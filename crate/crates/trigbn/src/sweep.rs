//! Classification of every valid `(g, n, δ(T), m, d, r)` up to a genus bound.

use std::io;

use serde::{Deserialize, Serialize};
use trigbn_core::curve::curves_of_genus;
use trigbn_core::{classify, ClassifyError, Curve, LocusCount, MAX_CIRCLES};

use crate::report::count_fields;

/// Largest genus whose curves all stay within the supported circle count.
pub const MAX_SWEEP_GENUS: i64 = MAX_CIRCLES - 1;

/// One JSON Lines row of the sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub g: i64,
    pub n: i64,
    #[serde(rename = "deltaT")]
    pub delta_t: i64,
    pub m: i64,
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
}

/// The fixed CSV layout; exact counts repeat the value in both bound columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CsvRow {
    pub g: i64,
    pub n: i64,
    #[serde(rename = "deltaT")]
    pub delta_t: i64,
    pub m: i64,
    pub d: i64,
    pub r: i64,
    pub kind: String,
    pub lower: Option<u128>,
    pub upper: Option<u128>,
    pub provenance: String,
}

pub const CSV_HEADER: &str = "g,n,deltaT,m,d,r,kind,lower,upper,provenance";

impl SweepRow {
    pub fn classify(curve: &Curve, d: i64, r: i64) -> Result<Self, ClassifyError> {
        let p = curve.params();
        let mut row = SweepRow {
            g: p.genus,
            n: p.circles,
            delta_t: p.delta_t,
            m: p.maroni,
            d,
            r,
            kind: String::new(),
            value: None,
            lower: None,
            upper: None,
            provenance: Vec::new(),
        };
        match classify(curve, d, r) {
            Ok(c) => {
                (row.value, row.lower, row.upper) = count_fields(&c.count);
                row.kind = c.count.name().to_owned();
                row.provenance = c.provenance.iter().map(|s| (*s).to_owned()).collect();
            }
            Err(ClassifyError::Inconsistent) => row.kind = "inconsistent".to_owned(),
            Err(e) => return Err(e),
        }
        Ok(row)
    }

    pub fn to_csv(&self) -> CsvRow {
        let (lower, upper) = match (self.value, self.lower, self.upper) {
            (Some(v), _, _) => (Some(v), Some(v)),
            (None, l, u) if self.kind == LocusCount::Empty.name() => (l.or(Some(0)), u.or(Some(0))),
            (None, l, u) => (l, u),
        };
        CsvRow {
            g: self.g,
            n: self.n,
            delta_t: self.delta_t,
            m: self.m,
            d: self.d,
            r: self.r,
            kind: self.kind.clone(),
            lower,
            upper,
            provenance: self.provenance.join(";"),
        }
    }
}

/// Every tuple in sweep order: `5 <= g <= g_max`, valid curves ordered by
/// `(n, δ(T), m)`, then `1 <= d < g` and `0 <= r <= d`.
pub fn tuples(g_max: i64) -> impl Iterator<Item = (Curve, i64, i64)> {
    (5..=g_max.min(MAX_SWEEP_GENUS)).flat_map(|g| {
        curves_of_genus(g)
            .flat_map(move |x| (1..g).flat_map(move |d| (0..=d).map(move |r| (x, d, r))))
    })
}

pub fn rows(g_max: i64) -> impl Iterator<Item = SweepRow> {
    tuples(g_max).map(|(x, d, r)| {
        SweepRow::classify(&x, d, r).expect("sweep tuples are inside the classifier's domain")
    })
}

/// Streams the sweep as JSON Lines.
pub fn write_json_lines(g_max: i64, out: &mut impl io::Write) -> io::Result<()> {
    for row in rows(g_max) {
        serde_json::to_writer(&mut *out, &row)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// Streams the sweep as CSV with the fixed header.
pub fn write_csv(g_max: i64, out: &mut impl io::Write) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows(g_max) {
        w.serialize(row.to_csv())?;
    }
    w.flush()
}
