//! Byte-stable CSV emitters: the bounds table, the region diagram and census rows.
//!
//! Every emitter writes a header row, `\n` line endings and rows in sorted
//! order. Nothing depends on wall-clock time, so equal inputs give equal bytes
//! as long as the budget is node-limited only.

use std::fmt::Write as _;

use crate::bounds::{known_exact, lower_bound, upper_bound_detailed};
use crate::census::CensusRecord;
use crate::error::{Error, Result};
use crate::family::KneserInstance;
use crate::search::{det_exact, SearchBudget};

/// Node limit per pair used by [`table_csv`] when the caller gives no budget.
pub const TABLE_NODE_LIMIT: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub n: u32,
    pub k: u32,
    pub lower: u32,
    pub upper: u32,
    pub exact: Option<u32>,
    pub det: Option<u32>,
}

fn require_node_budget(budget: &SearchBudget) -> Result<()> {
    if budget.time_limit.is_some() {
        return Err(Error::InvalidInput("table output must not depend on a time limit".into()));
    }
    Ok(())
}

/// Rows for every `(n, k)` with `2k < n <= max_n`, sorted by `(n, k)`.
///
/// `det` is the closed form when one applies, otherwise the search result, and
/// `None` if the search ran out of budget.
pub fn table_rows(max_n: u32, budget: &SearchBudget) -> Result<Vec<TableRow>> {
    require_node_budget(budget)?;
    let mut rows = Vec::new();
    for n in 3..=max_n {
        for k in 1..=(n - 1) / 2 {
            let inst = KneserInstance::new(n, k)?;
            let exact = known_exact(&inst)?.map(|b| b.value);
            let det = match exact {
                Some(v) => Some(v),
                None => det_exact(&inst, budget)?.value,
            };
            rows.push(TableRow {
                n,
                k,
                lower: lower_bound(&inst),
                upper: upper_bound_detailed(&inst).value,
                exact,
                det,
            });
        }
    }
    Ok(rows)
}

fn opt(v: Option<u32>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

pub fn table_csv(max_n: u32, budget: &SearchBudget) -> Result<String> {
    let mut out = String::from("n,k,lower,upper,exact,det\n");
    for r in table_rows(max_n, budget)? {
        writeln!(out, "{},{},{},{},{},{}", r.n, r.k, r.lower, r.upper, opt(r.exact), opt(r.det)).unwrap();
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    ExactKnown,
    UpperBoundOnly,
    Invalid,
}

impl Classification {
    pub fn tag(&self) -> &'static str {
        match self {
            Classification::ExactKnown => "ExactKnown",
            Classification::UpperBoundOnly => "UpperBoundOnly",
            Classification::Invalid => "Invalid",
        }
    }
}

/// One cell of the `(n, k)` plane. Invalid cells carry value 0 and provenance `none`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionRow {
    pub n: u32,
    pub k: u32,
    pub classification: Classification,
    pub value: u32,
    pub provenance: String,
}

/// Cells for `3 <= n <= max_n`, `1 <= k <= n/2`, sorted by `(n, k)`.
pub fn region_rows(max_n: u32) -> Result<Vec<RegionRow>> {
    let mut rows = Vec::new();
    for n in 3..=max_n {
        for k in 1..=n / 2 {
            if n <= 2 * k {
                rows.push(RegionRow {
                    n,
                    k,
                    classification: Classification::Invalid,
                    value: 0,
                    provenance: "none".into(),
                });
                continue;
            }
            let inst = KneserInstance::new(n, k)?;
            let (classification, bound) = match known_exact(&inst)? {
                Some(b) => (Classification::ExactKnown, b),
                None => (Classification::UpperBoundOnly, upper_bound_detailed(&inst)),
            };
            rows.push(RegionRow { n, k, classification, value: bound.value, provenance: bound.tags() });
        }
    }
    Ok(rows)
}

pub fn diagram_csv(max_n: u32) -> Result<String> {
    let mut out = String::from("n,k,classification,value,provenance\n");
    for r in region_rows(max_n)? {
        writeln!(out, "{},{},{},{},{}", r.n, r.k, r.classification.tag(), r.value, r.provenance).unwrap();
    }
    Ok(out)
}

/// Members of one census record, `det` being the record's `r`.
pub fn census_csv(record: &CensusRecord) -> String {
    let mut out = String::from("r,n,k,det,method\n");
    for m in &record.members {
        writeln!(out, "{},{},{},{},{}", record.r, m.n, m.k, record.r, m.method.tag()).unwrap();
    }
    out
}
