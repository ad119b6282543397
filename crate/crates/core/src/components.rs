//! Connected components of real symmetric products.
//!
//! The real part of the symmetric product `X_d` splits into connected
//! components named by their pseudo-lines: an effective real divisor lies in
//! the component labelled by the set of circles on which it has odd degree.
//! The same labels name the components of `W⁰_d(ℝ)`.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::curve::Curve;
use crate::divisor::RealDivisor;

/// Component counts. `s_n_k` with `n <= MAX_CIRCLES` is at most `2^63`, so
/// sums of two counts never overflow.
pub type Count = u128;

/// Largest circle count for which binomials are computed.
pub const MAX_CIRCLES: i64 = 64;

/// `C(n, k)`, zero outside `0 <= k <= n`.
///
/// Panics if `n > MAX_CIRCLES`.
pub fn binomial(n: i64, k: i64) -> Count {
    assert!(n <= MAX_CIRCLES, "binomial({n}, {k}) beyond MAX_CIRCLES");
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: Count = 1;
    for i in 0..k {
        // acc = C(n, i); the product stays below 2^70 for n <= 64
        acc = acc * (n - i) as Count / (i + 1) as Count;
    }
    acc
}

/// `s_n(k) = Σ_{s=0}^{⌊k/2⌋} C(n, k - 2s)`, the number of components of the
/// real part of the `k`-th symmetric product of a curve with `n` circles.
/// Zero for `k < 0`.
pub fn s_n_k(n: i64, k: i64) -> Count {
    if k < 0 {
        return 0;
    }
    (0..=k / 2).map(|s| binomial(n, k - 2 * s)).sum()
}

/// Name of a connected component of `X_d(ℝ)` (equivalently of `W⁰_d(ℝ)`).
///
/// `indices` are the pseudo-line circles, strictly increasing; the empty
/// label is the component containing divisors made of conjugate pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentLabel {
    indices: Vec<u32>,
    degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelError {
    NotIncreasing,
    CircleOutOfRange { circle: u32, circles: u32 },
    TooManyIndices { len: usize, degree: i64 },
    ParityMismatch { len: usize, degree: i64 },
    NotEffective,
    Syntax,
}

impl fmt::Display for LabelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabelError::NotIncreasing => f.write_str("label indices must be strictly increasing"),
            LabelError::CircleOutOfRange { circle, circles } => {
                write!(f, "circle {circle} outside 1..={circles}")
            }
            LabelError::TooManyIndices { len, degree } => {
                write!(f, "{len} indices exceed degree {degree}")
            }
            LabelError::ParityMismatch { len, degree } => {
                write!(f, "{len} indices and degree {degree} differ mod 2")
            }
            LabelError::NotEffective => f.write_str("divisor is not effective"),
            LabelError::Syntax => f.write_str("expected V(i1,...,ik)@d or V(0)@d"),
        }
    }
}

impl core::error::Error for LabelError {}

impl ComponentLabel {
    /// Checks the label against a curve with `circles` circles.
    pub fn new(indices: Vec<u32>, degree: i64, circles: u32) -> Result<Self, LabelError> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(LabelError::NotIncreasing);
        }
        if let Some(&c) = indices.iter().find(|&&c| c == 0 || c > circles) {
            return Err(LabelError::CircleOutOfRange { circle: c, circles });
        }
        let len = indices.len();
        if len as i64 > degree {
            return Err(LabelError::TooManyIndices { len, degree });
        }
        if (degree - len as i64).rem_euclid(2) != 0 {
            return Err(LabelError::ParityMismatch { len, degree });
        }
        Ok(ComponentLabel { indices, degree })
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// The same pseudo-lines in degree `degree + 2·pairs`.
    pub fn shifted(&self, pairs: i64) -> ComponentLabel {
        ComponentLabel {
            indices: self.indices.clone(),
            degree: self.degree + 2 * pairs,
        }
    }
}

impl fmt::Display for ComponentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("V(")?;
        if self.indices.is_empty() {
            f.write_str("0")?;
        }
        for (i, c) in self.indices.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")@{}", self.degree)
    }
}

/// Parses the index part of a label: `V(1,3)`, `V(0)`, `(1,3)`, `1,3`, `0`
/// or the empty string. Any `@d` suffix is ignored.
pub fn parse_indices(src: &str) -> Result<Vec<u32>, LabelError> {
    let body = src.split('@').next().unwrap_or("").trim();
    let body = body.strip_prefix('V').unwrap_or(body).trim();
    let body = match (body.strip_prefix('('), body.ends_with(')')) {
        (Some(rest), true) => &rest[..rest.len() - 1],
        (None, false) => body,
        _ => return Err(LabelError::Syntax),
    };
    let body = body.trim();
    if body.is_empty() || body == "0" {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|_| LabelError::Syntax))
        .collect()
}

/// `V(i1,...,ik)@d`; the ambient circle count is taken as the largest index.
impl FromStr for ComponentLabel {
    type Err = LabelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (head, degree) = s.split_once('@').ok_or(LabelError::Syntax)?;
        if !head.trim_start().starts_with('V') {
            return Err(LabelError::Syntax);
        }
        let degree: i64 = degree.trim().parse().map_err(|_| LabelError::Syntax)?;
        let indices = parse_indices(head)?;
        let circles = indices.iter().copied().max().unwrap_or(1);
        ComponentLabel::new(indices, degree, circles)
    }
}

/// Calls `f` on every strictly increasing `k`-subset of `1..=n`, in
/// lexicographic order.
pub fn for_each_subset(n: u32, k: usize, mut f: impl FnMut(&[u32])) {
    if k as u64 > u64::from(n) {
        return;
    }
    let mut cur: Vec<u32> = (1..=k as u32).collect();
    loop {
        f(&cur);
        // advance the rightmost index that still has room
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if cur[i] < n - (k - 1 - i) as u32 {
                break;
            }
            if i == 0 {
                return;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Every component label of `X_d(ℝ)` for a curve with `n` circles, each once,
/// in lexicographic order of the index tuples.
pub fn enumerate_labels(n: u32, d: i64) -> Vec<ComponentLabel> {
    let mut out = Vec::new();
    if d < 0 {
        return out;
    }
    let max_k = d.min(i64::from(n));
    let mut k = d.rem_euclid(2);
    while k <= max_k {
        for_each_subset(n, k as usize, |idx| {
            out.push(ComponentLabel {
                indices: idx.to_vec(),
                degree: d,
            })
        });
        k += 2;
    }
    out.sort();
    out
}

/// The component of `X_d(ℝ)` containing the effective divisor `d`.
pub fn label_of(d: &RealDivisor) -> Result<ComponentLabel, LabelError> {
    if !d.is_effective() {
        return Err(LabelError::NotEffective);
    }
    Ok(ComponentLabel {
        indices: d.parity().odd_circles(),
        degree: d.degree(),
    })
}

/// `n(W⁰_d) = n(X_d)` on a curve with real points.
pub fn count_w0(curve: &Curve, d: i64) -> Count {
    s_n_k(curve.circles(), d)
}
