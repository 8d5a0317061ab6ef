//! How many Kneser graphs have a given determining number.
//!
//! `f(r)` counts the pairs `(n, k)`, `n > 2k`, with `Det(K(n,k)) = r`, and
//! `F(r)` those with `Det(K(n,k)) <= r`. Since `r` bits give at most `2^r`
//! distinct signatures, every such pair has `n <= 2^r - 1`, so the census is a
//! finite scan.

use num_rational::Ratio;

use crate::bounds::{known_exact, lower_bound, upper_bound};
use crate::error::{Error, Result};
use crate::family::KneserInstance;
use crate::search::{det_decision, det_exact, SearchBudget};

/// Exact rationals for the closed-form estimates of `F(r)`.
pub type Rational = Ratio<i128>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Resolved by closed forms or coinciding bounds alone.
    ClosedForm,
    /// At least one search decision was needed.
    ExactSearch,
}

impl Method {
    pub fn tag(&self) -> &'static str {
        match self {
            Method::ClosedForm => "ClosedForm",
            Method::ExactSearch => "ExactSearch",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusMember {
    pub n: u32,
    pub k: u32,
    pub method: Method,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRecord {
    pub r: u32,
    /// Pairs with determining number exactly `r`.
    pub f: u64,
    /// Pairs with determining number at most `r`.
    pub cumulative: u64,
    /// Sorted by `(n, k)`.
    pub members: Vec<CensusMember>,
    /// Pairs the budget could not classify; non-empty means the counts are partial.
    pub unresolved: Vec<(u32, u32)>,
}

impl CensusRecord {
    pub fn is_complete(&self) -> bool {
        self.unresolved.is_empty()
    }
}

/// Where `Det(K(n,k))` sits relative to some `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Below,
    Equal,
    Above,
}

/// Compares `Det(K(n,k))` with `r`, using closed forms first and search only
/// for what the bounds leave open.
pub fn classify(inst: &KneserInstance, r: u32, budget: &SearchBudget) -> Result<(Relation, Method)> {
    let rel = |det: u32| match det.cmp(&r) {
        std::cmp::Ordering::Less => Relation::Below,
        std::cmp::Ordering::Equal => Relation::Equal,
        std::cmp::Ordering::Greater => Relation::Above,
    };
    if let Some(exact) = known_exact(inst)? {
        return Ok((rel(exact.value), Method::ClosedForm));
    }
    let (lower, upper) = (lower_bound(inst), upper_bound(inst));
    if lower > r {
        return Ok((Relation::Above, Method::ClosedForm));
    }
    if upper < r {
        return Ok((Relation::Below, Method::ClosedForm));
    }
    if lower == upper {
        return Ok((rel(lower), Method::ClosedForm));
    }
    // lower <= r <= upper and lower < upper
    if lower < r && det_decision(inst, r - 1, budget)?.is_some() {
        return Ok((Relation::Below, Method::ExactSearch));
    }
    // now Det >= r
    if upper == r || det_decision(inst, r, budget)?.is_some() {
        Ok((Relation::Equal, Method::ExactSearch))
    } else {
        Ok((Relation::Above, Method::ExactSearch))
    }
}

/// All valid pairs a census at `r` has to look at.
pub fn census_candidates(r: u32) -> impl Iterator<Item = (u32, u32)> {
    let max_n = (1u32 << r) - 1;
    (3..=max_n).flat_map(|n| (1..=(n - 1) / 2).map(move |k| (n, k)))
}

/// `f(r)` and `F(r)` with the list of members, each search decision limited by `budget`.
pub fn f_count(r: u32, budget: &SearchBudget) -> Result<CensusRecord> {
    if !(2..=20).contains(&r) {
        return Err(Error::InvalidInput(format!("census needs 2 <= r <= 20, got {r}")));
    }
    let mut record = CensusRecord { r, f: 0, cumulative: 0, members: Vec::new(), unresolved: Vec::new() };
    for (n, k) in census_candidates(r) {
        let inst = KneserInstance::new(n, k)?;
        match classify(&inst, r, budget) {
            Ok((Relation::Equal, method)) => {
                record.f += 1;
                record.cumulative += 1;
                record.members.push(CensusMember { n, k, method });
            }
            Ok((Relation::Below, _)) => record.cumulative += 1,
            Ok((Relation::Above, _)) => {}
            Err(Error::BudgetExceeded) => record.unresolved.push((n, k)),
            Err(e) => return Err(e),
        }
    }
    Ok(record)
}

/// Closed integer interval; empty when `lo > hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interval {
    pub lo: i64,
    pub hi: i64,
}

impl Interval {
    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn len(&self) -> u64 {
        if self.is_empty() {
            0
        } else {
            (self.hi - self.lo + 1) as u64
        }
    }

    pub fn contains(&self, x: i64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        self.is_empty() || (other.lo <= self.lo && self.hi <= other.hi)
    }

    /// Number of integers in `self` but not in `other`.
    pub fn difference_len(&self, other: &Interval) -> u64 {
        (self.lo..=self.hi).filter(|&x| !other.contains(x)).count() as u64
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

/// For a fixed `t` and `r`: values of `k` in `sufficient` are expected to have
/// `Det(K(t,k)) <= r`, and every `k` with `Det(K(t,k)) <= r` lies in `necessary`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bracket {
    pub t: u32,
    pub r: u32,
    /// `[ceil(2t/r) - 1, ceil(t/2) - 1]`
    pub sufficient: Interval,
    /// `[floor((2t-2)/r) - 1, ceil(t/2) - 1]`
    pub necessary: Interval,
}

pub fn brackets(t: u32, r: u32) -> Result<Bracket> {
    if r == 0 || r >= 63 || t < 3 || u64::from(t) > (1u64 << r) - 1 {
        return Err(Error::InvalidInput(format!("brackets need 3 <= t <= 2^r - 1, got t={t}, r={r}")));
    }
    let (t64, r64) = (i64::from(t), i64::from(r));
    let top = (t64 + 1) / 2 - 1;
    Ok(Bracket {
        t,
        r,
        sufficient: Interval { lo: (2 * t64 + r64 - 1) / r64 - 1, hi: top },
        necessary: Interval { lo: (2 * t64 - 2) / r64 - 1, hi: top },
    })
}

fn pow2(e: i32) -> Rational {
    if e >= 0 {
        Rational::from_integer(1i128 << e)
    } else {
        Rational::new(1, 1i128 << -e)
    }
}

fn check_formula_range(r: u32) -> Result<()> {
    if (1..=60).contains(&r) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("formula evaluated for 1 <= r <= 60, got {r}")))
    }
}

/// `((r-4)/r) * (2^(2r-2) - 2^(r-2) - 3/2) - 2^r + 3`.
pub fn f_lower_formula(r: u32) -> Result<Rational> {
    check_formula_range(r)?;
    let r_i = r as i32;
    let bracket = pow2(2 * r_i - 2) - pow2(r_i - 2) - Rational::new(3, 2);
    Ok(Rational::new(i128::from(r) - 4, i128::from(r)) * bracket - pow2(r_i) + Rational::from_integer(3))
}

/// [`f_lower_formula`] plus `3(2^r - 3)`.
pub fn f_upper_formula(r: u32) -> Result<Rational> {
    Ok(f_lower_formula(r)? + Rational::from_integer(3 * ((1i128 << r) - 3)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthRow {
    pub r: u32,
    /// `f(r+1) >= f(2) + ... + f(r)`
    pub dominates_sum: bool,
    /// `F(r+1) >= 2 F(r)`
    pub doubles: bool,
    /// `f(r+1) + f(r-1) >= 2 f(r)`; `None` at `r = 2`.
    pub convex: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthReport {
    pub records: Vec<CensusRecord>,
    pub rows: Vec<GrowthRow>,
    /// Set when some census could not be completed; rows stop before it.
    pub partial: bool,
}

impl GrowthReport {
    pub fn all_hold(&self) -> bool {
        !self.partial && self.rows.iter().all(|row| row.dominates_sum && row.doubles && row.convex != Some(false))
    }
}

/// Growth checks for `r = 2..=r_max`, computing `f` up to `r_max + 1`.
pub fn growth_check(r_max: u32, budget: &SearchBudget) -> Result<GrowthReport> {
    if r_max < 3 {
        return Err(Error::InvalidInput("growth_check needs r_max >= 3".into()));
    }
    let mut records = Vec::new();
    let mut partial = false;
    for r in 2..=r_max + 1 {
        let rec = f_count(r, budget)?;
        let complete = rec.is_complete();
        records.push(rec);
        if !complete {
            partial = true;
            break;
        }
    }
    let complete: Vec<&CensusRecord> = records.iter().take_while(|rec| rec.is_complete()).collect();
    let f = |r: u32| complete[(r - 2) as usize].f;
    let big_f = |r: u32| complete[(r - 2) as usize].cumulative;
    let mut rows = Vec::new();
    for r in 2..=r_max {
        if (r + 1 - 2) as usize >= complete.len() {
            break;
        }
        let sum: u64 = (2..=r).map(f).sum();
        rows.push(GrowthRow {
            r,
            dominates_sum: f(r + 1) >= sum,
            doubles: big_f(r + 1) >= 2 * big_f(r),
            convex: (r >= 3).then(|| f(r + 1) + f(r - 1) >= 2 * f(r)),
        });
    }
    Ok(GrowthReport { records, rows, partial })
}

/// A pair where "`t <= floor(r(k+1)/2) + 1` iff `Det(K(t,k)) <= r`" fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CharacterizationMismatch {
    pub t: u32,
    pub k: u32,
    pub r: u32,
    pub predicted: bool,
    pub det: u32,
}

/// Tests the inequality-only characterization of `Det(K(t,k)) <= r` against
/// exact values for every pair of the census at `r`. Pairs the budget cannot
/// resolve are skipped.
pub fn characterization_mismatches(r: u32, budget: &SearchBudget) -> Result<Vec<CharacterizationMismatch>> {
    let mut out = Vec::new();
    for (t, k) in census_candidates(r) {
        let inst = KneserInstance::new(t, k)?;
        let predicted = u64::from(t) <= u64::from(r) * u64::from(k + 1) / 2 + 1;
        let det = match known_exact(&inst)? {
            Some(b) => b.value,
            None => match det_exact(&inst, budget)?.value {
                Some(v) => v,
                None => continue,
            },
        };
        if predicted != (det <= r) {
            out.push(CharacterizationMismatch { t, k, r, predicted, det });
        }
    }
    Ok(out)
}
