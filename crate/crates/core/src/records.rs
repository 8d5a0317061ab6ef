//! One-family-per-line JSON records: `{"n":7,"k":3,"sets":[[1,2,3],[1,4,5],[2,4,6]]}`.
//!
//! Records with `n = 2k` are read in the auxiliary regime, everything else in
//! the determining regime.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{Family, KneserInstance, Regime};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyRecord {
    pub n: u32,
    pub k: u32,
    pub sets: Vec<Vec<u32>>,
}

impl FamilyRecord {
    pub fn from_family(f: &Family) -> Self {
        FamilyRecord { n: f.instance().n(), k: f.instance().k(), sets: f.to_vecs() }
    }

    pub fn to_family(&self) -> Result<Family> {
        let regime = if self.n == 2 * self.k { Regime::Auxiliary } else { Regime::Determining };
        let inst = KneserInstance::with_regime(self.n, self.k, regime)?;
        Family::new(inst, self.sets.iter().map(|s| s.iter().copied()))
    }
}

/// Serializes without a trailing newline.
pub fn to_json_line(f: &Family) -> String {
    serde_json::to_string(&FamilyRecord::from_family(f)).expect("records always serialize")
}

pub fn from_json_line(line: &str) -> Result<Family> {
    let rec: FamilyRecord = serde_json::from_str(line.trim()).map_err(|e| Error::Parse(e.to_string()))?;
    rec.to_family()
}

/// Parses every non-blank line, keeping the 1-based line number with each result.
pub fn read_records(text: &str) -> Vec<(usize, Result<Family>)> {
    text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()).map(|(i, l)| (i + 1, from_json_line(l))).collect()
}
