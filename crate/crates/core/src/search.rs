//! Exact determining numbers by exhaustive search.
//!
//! A determining family of size `r` for `K(n,k)` is the same thing as an
//! `r x n` 0/1 matrix whose rows all have weight `k` and whose columns are
//! pairwise distinct. The search therefore picks `n` distinct column vectors
//! from `{0,1}^r` whose sum is `(k, ..., k)`.
//!
//! Candidate columns are visited by Hamming weight, lightest first, and in
//! increasing numeric value inside one weight class. The state carried along
//! is the vector of remaining row demands. Pruning:
//!
//! * a column may only touch rows whose demand is still positive;
//! * the number of remaining candidates, and the smallest and largest total
//!   weight that `m` remaining distinct columns can have, must be compatible
//!   with the remaining demands;
//! * failed states are cached. At a weight-class boundary the remaining
//!   candidate set ("all columns of weight >= w") is invariant under row
//!   permutations, so the cache key there uses the *sorted* demand vector.
//!   This quotients out the `r!` interchangeable rows.
//!
//! When `n > 2^(r-1)` the complementary problem (the `2^r - n` unused columns,
//! row sums `2^(r-1) - k`) is solved instead.
//!
//! The witness returned is the first solution met in this visiting order, so
//! results are deterministic.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use crate::bounds::lower_bound;
use crate::error::{Error, Result};
use crate::family::{Family, KneserInstance, MAX_SETS};

/// Entries kept in each failure cache before it is flushed.
const MEMO_CAPACITY: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Largest family size tried; `None` means `n - k`, which always suffices.
    pub max_r: Option<u32>,
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self { max_r: None, node_limit: Some(1_000_000_000), time_limit: None }
    }
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        Self { max_r: None, node_limit: None, time_limit: None }
    }

    pub fn with_node_limit(limit: u64) -> Self {
        Self { node_limit: Some(limit), ..Self::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Certificate {
    ExactSearch,
    ClosedForm,
    BudgetExceeded,
}

impl Certificate {
    pub fn tag(&self) -> &'static str {
        match self {
            Certificate::ExactSearch => "ExactSearch",
            Certificate::ClosedForm => "ClosedForm",
            Certificate::BudgetExceeded => "BudgetExceeded",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetResult {
    pub instance: KneserInstance,
    /// `None` when the budget ran out first.
    pub value: Option<u32>,
    pub witness: Option<Family>,
    pub certificate: Certificate,
    /// Largest `r` shown infeasible by search.
    pub last_decided: Option<u32>,
}

/// Shared node and clock accounting for one top-level call.
struct Meter {
    nodes: u64,
    node_limit: Option<u64>,
    deadline: Option<Instant>,
}

impl Meter {
    fn new(budget: &SearchBudget) -> Self {
        Self { nodes: 0, node_limit: budget.node_limit, deadline: budget.time_limit.map(|t| Instant::now() + t) }
    }

    #[inline]
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.node_limit.is_some_and(|l| self.nodes > l) {
            return Err(Error::BudgetExceeded);
        }
        if self.nodes & 0x3ff == 0 && self.deadline.is_some_and(|d| Instant::now() >= d) {
            return Err(Error::BudgetExceeded);
        }
        Ok(())
    }
}

fn binomials(max: usize) -> Vec<Vec<u128>> {
    let mut table = vec![vec![0u128; max + 1]; max + 1];
    for p in 0..=max {
        table[p][0] = 1;
        for j in 1..=p {
            table[p][j] = table[p - 1][j - 1].saturating_add(table[p - 1][j]);
        }
    }
    table
}

/// All subsets of `mask` with exactly `weight` bits, ascending.
fn subsets_of_weight(mask: u64, weight: u32) -> Vec<u64> {
    let bits: Vec<u32> = (0..64).filter(|b| mask >> b & 1 == 1).collect();
    let mut out = Vec::new();
    let w = weight as usize;
    if w > bits.len() {
        return out;
    }
    let mut idx: Vec<usize> = (0..w).collect();
    loop {
        out.push(idx.iter().fold(0u64, |acc, &i| acc | 1 << bits[i]));
        // advance the rightmost index that can move
        let Some(pos) = (0..w).rev().find(|&p| idx[p] < bits.len() - w + p) else { break };
        idx[pos] += 1;
        for q in pos + 1..w {
            idx[q] = idx[q - 1] + 1;
        }
    }
    out.sort_unstable();
    out
}

#[derive(Hash, PartialEq, Eq)]
struct ClassKey {
    weight: u32,
    remaining: u32,
    demands: Vec<u32>,
}

#[derive(Hash, PartialEq, Eq)]
struct InnerKey {
    weight: u32,
    entry_support: u64,
    start: u32,
    remaining: u32,
    demands: Vec<u32>,
}

struct ColumnSearch<'m> {
    rows: u32,
    meter: &'m mut Meter,
    binom: Vec<Vec<u128>>,
    class_memo: HashSet<ClassKey>,
    inner_memo: HashSet<InnerKey>,
    chosen: Vec<u64>,
}

impl<'m> ColumnSearch<'m> {
    fn new(rows: u32, meter: &'m mut Meter) -> Self {
        Self {
            rows,
            meter,
            binom: binomials(rows as usize),
            class_memo: HashSet::new(),
            inner_memo: HashSet::new(),
            chosen: Vec::new(),
        }
    }

    /// Looks for `count` distinct columns with the given row sums.
    fn solve(&mut self, count: u32, row_sum: u32) -> Result<Option<Vec<u64>>> {
        let mut demands = vec![row_sum; self.rows as usize];
        self.chosen.clear();
        if self.enter_class(0, count, &mut demands)? {
            Ok(Some(std::mem::take(&mut self.chosen)))
        } else {
            Ok(None)
        }
    }

    fn support(demands: &[u32]) -> u64 {
        demands.iter().enumerate().filter(|(_, &d)| d > 0).fold(0, |acc, (i, _)| acc | 1 << i)
    }

    /// Can `remaining` distinct columns meet `demands`, given `in_class` unused
    /// candidates of weight `weight` and every column of larger weight inside the
    /// current support?
    fn feasible(&self, weight: u32, in_class: u128, remaining: u32, demands: &[u32]) -> bool {
        let m = u128::from(remaining);
        let p = demands.iter().filter(|&&d| d > 0).count();
        if demands.iter().any(|&d| u128::from(d) > m) {
            return false;
        }
        let total: u128 = demands.iter().map(|&d| u128::from(d)).sum();
        let w = weight as usize;
        if w > p && m > 0 && weight > 0 {
            return false;
        }
        let in_class = if weight == 0 { in_class.min(1) } else { in_class };
        let mut available = in_class;
        for j in w + 1..=p {
            available = available.saturating_add(self.binom[p][j]);
        }
        if available < m {
            return false;
        }
        // lightest and heaviest completions
        let mut need = m;
        let mut min_total: u128 = 0;
        let take = need.min(in_class);
        min_total += take * w as u128;
        need -= take;
        for j in w + 1..=p {
            if need == 0 {
                break;
            }
            let take = need.min(self.binom[p][j]);
            min_total += take * j as u128;
            need -= take;
        }
        if min_total > total {
            return false;
        }
        let mut need = m;
        let mut max_total: u128 = 0;
        for j in (w + 1..=p).rev() {
            if need == 0 {
                break;
            }
            let take = need.min(self.binom[p][j]);
            max_total += take * j as u128;
            need -= take;
        }
        max_total += need.min(in_class) * w as u128;
        if max_total < total {
            return false;
        }
        // each row needs enough candidate columns through it
        if p > 0 {
            let mut through_row = if weight > 0 { in_class } else { 0 };
            for j in w + 1..=p {
                through_row = through_row.saturating_add(self.binom[p - 1][j - 1]);
            }
            if demands.iter().any(|&d| u128::from(d) > through_row) {
                return false;
            }
        }
        true
    }

    fn enter_class(&mut self, weight: u32, remaining: u32, demands: &mut Vec<u32>) -> Result<bool> {
        self.meter.tick()?;
        if remaining == 0 {
            return Ok(demands.iter().all(|&d| d == 0));
        }
        if weight > self.rows {
            return Ok(false);
        }
        let support = Self::support(demands);
        let p = support.count_ones();
        if weight > p && weight > 0 {
            return Ok(false);
        }
        let in_class = self.binom[p as usize][weight as usize];
        if !self.feasible(weight, in_class, remaining, demands) {
            return Ok(false);
        }
        let mut sorted = demands.clone();
        sorted.sort_unstable();
        let key = ClassKey { weight, remaining, demands: sorted };
        if self.class_memo.contains(&key) {
            return Ok(false);
        }
        let candidates = if weight == 0 { vec![0] } else { subsets_of_weight(support, weight) };
        let found = self.within_class(weight, &candidates, 0, support, remaining, demands)?;
        if !found {
            if self.class_memo.len() >= MEMO_CAPACITY {
                self.class_memo.clear();
            }
            self.class_memo.insert(key);
        }
        Ok(found)
    }

    fn within_class(
        &mut self,
        weight: u32,
        candidates: &[u64],
        start: usize,
        entry_support: u64,
        remaining: u32,
        demands: &mut Vec<u32>,
    ) -> Result<bool> {
        if remaining == 0 {
            return Ok(demands.iter().all(|&d| d == 0));
        }
        if start > 0 {
            let left = (candidates.len() - start) as u128;
            if !self.feasible(weight, left, remaining, demands) {
                return Ok(false);
            }
        }
        let key = InnerKey { weight, entry_support, start: start as u32, remaining, demands: demands.clone() };
        if start > 0 && self.inner_memo.contains(&key) {
            return Ok(false);
        }
        let support = Self::support(demands);
        for j in start..candidates.len() {
            let column = candidates[j];
            if column & !support != 0 {
                continue;
            }
            self.meter.tick()?;
            for (row, d) in demands.iter_mut().enumerate() {
                *d -= (column >> row & 1) as u32;
            }
            self.chosen.push(column);
            if self.within_class(weight, candidates, j + 1, entry_support, remaining - 1, demands)? {
                return Ok(true);
            }
            self.chosen.pop();
            for (row, d) in demands.iter_mut().enumerate() {
                *d += (column >> row & 1) as u32;
            }
        }
        if self.enter_class(weight + 1, remaining, demands)? {
            return Ok(true);
        }
        if start > 0 {
            if self.inner_memo.len() >= MEMO_CAPACITY {
                self.inner_memo.clear();
            }
            self.inner_memo.insert(key);
        }
        Ok(false)
    }
}

fn decide_with(inst: &KneserInstance, r: u32, meter: &mut Meter) -> Result<Option<Family>> {
    if r == 0 {
        return Err(Error::InvalidInput("family size must be at least 1".into()));
    }
    if r as usize > MAX_SETS {
        return Err(Error::TooManySets(r as usize));
    }
    let (n, k) = (u64::from(inst.n()), u64::from(inst.k()));
    if r < 64 && n > 1u64 << r {
        return Ok(None);
    }
    let columns = if r < 63 && 2 * n > 1u64 << r {
        let total = 1u64 << r;
        let half = total / 2;
        if k > half {
            return Ok(None);
        }
        let mut search = ColumnSearch::new(r, meter);
        match search.solve((total - n) as u32, (half - k) as u32)? {
            Some(unused) => {
                let unused: HashSet<u64> = unused.into_iter().collect();
                let mut cols: Vec<u64> = (0..total).filter(|c| !unused.contains(c)).collect();
                cols.sort_by_key(|&c| (c.count_ones(), c));
                cols
            }
            None => return Ok(None),
        }
    } else {
        let mut search = ColumnSearch::new(r, meter);
        match search.solve(n as u32, k as u32)? {
            Some(cols) => cols,
            None => return Ok(None),
        }
    };
    let sets: Vec<Vec<u32>> = (0..r)
        .map(|row| columns.iter().enumerate().filter(|(_, &c)| c >> row & 1 == 1).map(|(e, _)| e as u32 + 1).collect())
        .collect();
    Family::new(*inst, sets).map(Some)
}

/// Whether `K(n,k)` has a determining family of exactly `r` sets; returns one if so.
pub fn det_decision(inst: &KneserInstance, r: u32, budget: &SearchBudget) -> Result<Option<Family>> {
    let mut meter = Meter::new(budget);
    decide_with(inst, r, &mut meter)
}

/// The determining number, scanning upward from the best lower bound.
///
/// The size just below the answer is always refuted by search as well, so a
/// resolved result is certified from both sides.
pub fn det_exact(inst: &KneserInstance, budget: &SearchBudget) -> Result<DetResult> {
    let mut meter = Meter::new(budget);
    let start = lower_bound(inst).max(1);
    let max_r = budget.max_r.unwrap_or(inst.n() - inst.k()).min(MAX_SETS as u32);
    let unresolved = |last_decided| DetResult {
        instance: *inst,
        value: None,
        witness: None,
        certificate: Certificate::BudgetExceeded,
        last_decided,
    };

    let mut last_decided = None;
    if start > 1 {
        match decide_with(inst, start - 1, &mut meter) {
            Ok(Some(_)) => {
                return Err(Error::InternalInconsistency(format!(
                    "{inst} has a determining family of size {} below its lower bound",
                    start - 1
                )))
            }
            Ok(None) => last_decided = Some(start - 1),
            Err(Error::BudgetExceeded) => {}
            Err(e) => return Err(e),
        }
    }
    for r in start..=max_r {
        match decide_with(inst, r, &mut meter) {
            Ok(Some(witness)) => {
                if r > 1 && last_decided != Some(r - 1) {
                    // the refutation below the lower bound did not finish
                    return Ok(unresolved(last_decided));
                }
                return Ok(DetResult {
                    instance: *inst,
                    value: Some(r),
                    witness: Some(witness),
                    certificate: Certificate::ExactSearch,
                    last_decided,
                });
            }
            Ok(None) => last_decided = Some(r),
            Err(Error::BudgetExceeded) => return Ok(unresolved(last_decided)),
            Err(e) => return Err(e),
        }
    }
    Ok(unresolved(last_decided))
}
