//! Serializable run report. Field order is the key order in the JSON output.

use std::collections::BTreeMap;

use serde::Serialize;

/// Ranks of `Ext^*(source, target)`; `degree` is the degree in which a
/// generator is required, `None` for a vanishing check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtRow {
    pub i: i32,
    pub source: String,
    pub target: String,
    pub degree: Option<i32>,
    pub ranks: BTreeMap<i32, usize>,
}

impl ExtRow {
    pub fn new(i: i32, source: String, target: String, degree: Option<i32>, ranks: &BTreeMap<i32, usize>) -> Self {
        ExtRow { i, source, target, degree, ranks: ranks.clone() }
    }
}

/// A sampled vertex whose direction profile differs from the expected one.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Mismatch {
    pub cell: u32,
    /// Exact coordinates in units of π.
    pub coords: Vec<String>,
    pub expected: Vec<Vec<i64>>,
    pub found: Vec<Vec<i64>>,
}

/// Stalk rank vectors on the two strata of a time slice.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SliceCheck {
    pub t: String,
    pub cells: usize,
    /// Distinct stalk rank vectors on diagonal cells.
    pub diagonal: Vec<BTreeMap<i32, usize>>,
    /// Distinct stalk rank vectors off the diagonal.
    pub off_diagonal: Vec<BTreeMap<i32, usize>>,
    pub constant: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub space: String,
    pub n: usize,
    pub field: String,
    pub mesh: usize,
    pub window: [String; 2],
    pub ext_table: Vec<ExtRow>,
    pub ss_mismatches: Vec<Mismatch>,
    pub t0_check: bool,
    pub slice_checks: Vec<SliceCheck>,
    pub seed: u64,
    pub ss_samples: usize,
    pub passed: bool,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
