//! Closed-form lower bounds, upper bounds and exact values of `Det(K(n,k))`.
//!
//! Every value carries the list of [`Source`]s attaining it. All arithmetic is
//! integral; `ceil(log2(x))` is taken from the bit length.

use std::fmt;

use crate::error::{Error, Result};
use crate::family::KneserInstance;

/// Where a bound or exact value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Source {
    /// `ceil(log2(n+1))`: `n` distinct signatures need that many bits.
    Log2,
    /// `ceil((2n-2)/(k+1))`: at most `r` elements lie in a single set.
    Counting,
    /// `n - k`.
    ComplementSize,
    /// `k`, valid for `2k <= n <= k(k+1)/2`.
    SubsetSize,
    /// `r` for `n <= r(r+1)/2 + 1`, `3 <= r <= k`, from the triangular family.
    Triangular,
    /// `Det(K(2k+1,k)) + (n - 2k - 1)`, growing `n` one element at a time.
    OddRecursion,
    /// `k = 1`: `n - 1` singletons.
    Complete,
    /// `n = floor(d(k+1)/2) + 1` with `k <= d`, `d > 2` gives `d`.
    DegreeFormula,
    /// `floor((d-1)(k+1)/2) < n - 1 < floor(d(k+1)/2)` with `3 <= k+1 <= d` gives `d`.
    DegreeInterval,
    /// `n = 2k + 1` gives `ceil(log2(n+1))`.
    OddGraph,
    /// `n = 2k + 2` a power of two gives `ceil(log2(n+1))`.
    PowerOfTwo,
    /// `n = 2^r - 1`, `k = 2^(r-1) - 1` gives `r`.
    BinaryOdd,
}

impl Source {
    pub fn tag(&self) -> &'static str {
        match self {
            Source::Log2 => "log2",
            Source::Counting => "counting",
            Source::ComplementSize => "n-minus-k",
            Source::SubsetSize => "k-bound",
            Source::Triangular => "triangular",
            Source::OddRecursion => "odd-recursion",
            Source::Complete => "complete",
            Source::DegreeFormula => "degree-formula",
            Source::DegreeInterval => "degree-interval",
            Source::OddGraph => "odd-graph",
            Source::PowerOfTwo => "power-of-two",
            Source::BinaryOdd => "binary-odd",
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A value together with every source that attains it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bound {
    pub value: u32,
    pub sources: Vec<Source>,
}

impl Bound {
    fn best(candidates: &[(u32, Source)], pick: fn(u32, u32) -> u32) -> Bound {
        let value = candidates.iter().map(|c| c.0).reduce(pick).expect("at least one candidate");
        let sources = candidates.iter().filter(|c| c.0 == value).map(|c| c.1).collect();
        Bound { value, sources }
    }

    pub fn tags(&self) -> String {
        self.sources.iter().map(Source::tag).collect::<Vec<_>>().join("+")
    }
}

/// Smallest `r` with `2^r >= x`.
pub fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

fn div_ceil(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

fn lower_candidates(inst: &KneserInstance) -> Vec<(u32, Source)> {
    let (n, k) = (u64::from(inst.n()), u64::from(inst.k()));
    vec![(ceil_log2(n + 1), Source::Log2), (div_ceil(2 * n - 2, k + 1) as u32, Source::Counting)]
}

fn upper_candidates(inst: &KneserInstance) -> Vec<(u32, Source)> {
    let (n, k) = (u64::from(inst.n()), u64::from(inst.k()));
    let mut out = vec![((n - k) as u32, Source::ComplementSize)];
    if 2 * k <= n && n <= k * (k + 1) / 2 {
        out.push((k as u32, Source::SubsetSize));
    }
    if let Some(r) = (3..=k).find(|&r| n <= r * (r + 1) / 2 + 1) {
        out.push((r as u32, Source::Triangular));
    }
    out.push((ceil_log2(2 * k + 2) + (n - 2 * k - 1) as u32, Source::OddRecursion));
    out
}

fn exact_candidates(inst: &KneserInstance) -> Vec<(u32, Source)> {
    let (n, k) = (u64::from(inst.n()), u64::from(inst.k()));
    let mut out = Vec::new();
    if k == 1 {
        out.push(((n - 1) as u32, Source::Complete));
    }
    if n == 2 * k + 1 {
        out.push((ceil_log2(n + 1), Source::OddGraph));
        if (n + 1).is_power_of_two() {
            out.push((ceil_log2(n + 1), Source::BinaryOdd));
        }
    }
    if n == 2 * k + 2 && n.is_power_of_two() {
        out.push((ceil_log2(n + 1), Source::PowerOfTwo));
    }
    // floor(d(k+1)/2) + 1 is increasing in d
    let mut d = k.max(3);
    while d * (k + 1) / 2 < n {
        if d * (k + 1) / 2 + 1 == n {
            out.push((d as u32, Source::DegreeFormula));
        }
        d += 1;
    }
    if k >= 2 {
        let m = n - 1;
        let mut d = k + 1;
        while (d - 1) * (k + 1) / 2 < m {
            if m < d * (k + 1) / 2 {
                out.push((d as u32, Source::DegreeInterval));
            }
            d += 1;
        }
    }
    out
}

pub fn lower_bound(inst: &KneserInstance) -> u32 {
    lower_bound_detailed(inst).value
}

pub fn lower_bound_detailed(inst: &KneserInstance) -> Bound {
    Bound::best(&lower_candidates(inst), u32::max)
}

pub fn upper_bound(inst: &KneserInstance) -> u32 {
    upper_bound_detailed(inst).value
}

pub fn upper_bound_detailed(inst: &KneserInstance) -> Bound {
    Bound::best(&upper_candidates(inst), u32::min)
}

/// The exact value when some closed form applies. Two applicable formulas
/// giving different values is reported as an internal inconsistency.
pub fn known_exact(inst: &KneserInstance) -> Result<Option<Bound>> {
    let candidates = exact_candidates(inst);
    let Some(&(value, _)) = candidates.first() else {
        return Ok(None);
    };
    if let Some(&(other, source)) = candidates.iter().find(|c| c.0 != value) {
        return Err(Error::InternalInconsistency(format!(
            "closed forms disagree on {inst}: {value} ({}) vs {other} ({source})",
            candidates[0].1
        )));
    }
    Ok(Some(Bound { value, sources: candidates.into_iter().map(|c| c.1).collect() }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    pub instance: KneserInstance,
    pub lower: Bound,
    pub upper: Bound,
    pub exact: Option<Bound>,
}

impl BoundsReport {
    /// The determining number when the bounds pin it down.
    pub fn resolved(&self) -> Option<u32> {
        self.exact.as_ref().map(|e| e.value).or((self.lower.value == self.upper.value).then_some(self.lower.value))
    }
}

/// Combines all bounds; a known exact value clamps both sides.
pub fn bounds_report(inst: &KneserInstance) -> Result<BoundsReport> {
    let mut lower = lower_bound_detailed(inst);
    let mut upper = upper_bound_detailed(inst);
    let exact = known_exact(inst)?;
    if lower.value > upper.value {
        return Err(Error::InternalInconsistency(format!(
            "lower bound {} exceeds upper bound {} on {inst}",
            lower.value, upper.value
        )));
    }
    if let Some(e) = &exact {
        if e.value < lower.value || e.value > upper.value {
            return Err(Error::InternalInconsistency(format!(
                "exact value {} of {inst} outside [{}, {}]",
                e.value, lower.value, upper.value
            )));
        }
        lower = e.clone();
        upper = e.clone();
    }
    Ok(BoundsReport { instance: *inst, lower, upper, exact })
}
