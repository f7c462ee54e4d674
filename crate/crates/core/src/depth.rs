//! Depth comparison of the two range-oracle implementations.
//!
//! Both circuits are lowered to a basis set (all-to-all connectivity, no
//! routing) and measured with the ASAP layered depth. A sweep covers every
//! interior interval `0 < n1 < n2 < 2^n - 1` for each qubit count.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decompose::{decompose_to_basis, BasisSet};
use crate::error::{CircuitError, OracleError};
use crate::oracles::{range_oracle_a, range_oracle_b, RangeSpec};

pub const SWEEP_MIN_QUBITS: usize = 3;
pub const SWEEP_MAX_QUBITS: usize = 10;
pub const DEFAULT_SWEEP_MAX: usize = 8;
/// Ratio of consecutive max depths above which growth is flagged as exponential.
pub const GROWTH_RATIO_LIMIT: f64 = 3.0;

pub const CSV_HEADER: &str = "n,n1,n2,depth_a,depth_b,gates_a,gates_b";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DepthError {
    #[error("sweep bounds must satisfy {SWEEP_MIN_QUBITS} <= n_min <= n_max <= {SWEEP_MAX_QUBITS}, got {0}..={1}")]
    BadBounds(usize, usize),
    #[error("growth check needs at least 4 consecutive qubit counts, got {0}")]
    InsufficientData(usize),
    #[error("csv line {line}: {msg}")]
    Csv { line: usize, msg: String },
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

impl From<CircuitError> for DepthError {
    fn from(e: CircuitError) -> Self {
        DepthError::Oracle(e.into())
    }
}

/// Post-decomposition depth and gate count of both implementations for one range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthRecord {
    pub n: usize,
    pub n1: u64,
    pub n2: u64,
    pub depth_a: usize,
    pub depth_b: usize,
    pub gates_a: usize,
    pub gates_b: usize,
}

pub fn measure_pair(spec: &RangeSpec, basis: &BasisSet) -> Result<DepthRecord, DepthError> {
    let a = decompose_to_basis(&range_oracle_a(spec)?, basis)?;
    let b = decompose_to_basis(&range_oracle_b(spec)?, basis)?;
    Ok(DepthRecord {
        n: spec.n(),
        n1: spec.n1(),
        n2: spec.n2(),
        depth_a: a.depth(),
        depth_b: b.depth(),
        gates_a: a.len(),
        gates_b: b.len(),
    })
}

/// Every interior interval `0 < n1 < n2 < 2^n - 1`, ordered by `(n1, n2)`.
pub fn interior_ranges(n: usize) -> impl Iterator<Item = (u64, u64)> {
    let top = (1u64 << n) - 1;
    (1..top).flat_map(move |n1| (n1 + 1..top).map(move |n2| (n1, n2)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    pub min: usize,
    pub median: f64,
    pub max: usize,
}

impl Stats {
    fn of(values: &mut [usize]) -> Stats {
        values.sort_unstable();
        let len = values.len();
        let median = if len % 2 == 1 {
            values[len / 2] as f64
        } else {
            (values[len / 2 - 1] + values[len / 2]) as f64 / 2.0
        };
        Stats {
            min: values[0],
            median,
            max: values[len - 1],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QubitSummary {
    pub n: usize,
    pub ranges: usize,
    pub depth_a: Stats,
    pub depth_b: Stats,
    /// Fraction of ranges with `depth_b < depth_a`.
    pub b_lower_fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub per_n: Vec<QubitSummary>,
}

impl SweepSummary {
    /// Aggregates records grouped by qubit count. Records need not be sorted.
    pub fn from_records(records: &[DepthRecord]) -> SweepSummary {
        let mut ns: Vec<usize> = records.iter().map(|r| r.n).collect();
        ns.sort_unstable();
        ns.dedup();
        let per_n = ns
            .into_iter()
            .map(|n| {
                let rs: Vec<&DepthRecord> = records.iter().filter(|r| r.n == n).collect();
                let mut a: Vec<usize> = rs.iter().map(|r| r.depth_a).collect();
                let mut b: Vec<usize> = rs.iter().map(|r| r.depth_b).collect();
                let lower = rs.iter().filter(|r| r.depth_b < r.depth_a).count();
                QubitSummary {
                    n,
                    ranges: rs.len(),
                    depth_a: Stats::of(&mut a),
                    depth_b: Stats::of(&mut b),
                    b_lower_fraction: lower as f64 / rs.len() as f64,
                }
            })
            .collect();
        SweepSummary { per_n }
    }

    pub fn get(&self, n: usize) -> Option<&QubitSummary> {
        self.per_n.iter().find(|s| s.n == n)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sweep {
    pub basis: String,
    pub records: Vec<DepthRecord>,
    pub summary: SweepSummary,
}

/// Measures every interior range for `n_min..=n_max` in parallel; records come
/// back sorted by `(n, n1, n2)`.
pub fn sweep(n_min: usize, n_max: usize, basis: &BasisSet) -> Result<Sweep, DepthError> {
    if n_min < SWEEP_MIN_QUBITS || n_min > n_max || n_max > SWEEP_MAX_QUBITS {
        return Err(DepthError::BadBounds(n_min, n_max));
    }
    let specs: Vec<RangeSpec> = (n_min..=n_max)
        .flat_map(|n| interior_ranges(n).map(move |(n1, n2)| (n, n1, n2)))
        .map(|(n, n1, n2)| RangeSpec::new(n, n1, n2))
        .collect::<Result<_, _>>()?;
    let mut records: Vec<DepthRecord> = specs
        .par_iter()
        .map(|s| measure_pair(s, basis))
        .collect::<Result<_, _>>()?;
    records.sort_by_key(|r| (r.n, r.n1, r.n2));
    let summary = SweepSummary::from_records(&records);
    Ok(Sweep {
        basis: basis.to_string(),
        records,
        summary,
    })
}

impl Sweep {
    /// CSV with `#` comment lines describing the configuration, then the header
    /// and one row per record.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# basis={} connectivity=all-to-all routing=none depth=asap-layers", self.basis);
        out.push_str(CSV_HEADER);
        out.push('\n');
        for r in &self.records {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.n, r.n1, r.n2, r.depth_a, r.depth_b, r.gates_a, r.gates_b
            );
        }
        out
    }
}

/// Parses the CSV written by [`Sweep::to_csv`]. Comment lines are skipped.
pub fn parse_csv(text: &str) -> Result<Vec<DepthRecord>, DepthError> {
    let mut records = Vec::new();
    let mut saw_header = false;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !saw_header {
            if line != CSV_HEADER {
                return Err(DepthError::Csv {
                    line: i + 1,
                    msg: format!("expected header '{CSV_HEADER}'"),
                });
            }
            saw_header = true;
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 7 {
            return Err(DepthError::Csv {
                line: i + 1,
                msg: format!("expected 7 fields, got {}", fields.len()),
            });
        }
        let num = |k: usize| -> Result<u64, DepthError> {
            fields[k].parse().map_err(|_| DepthError::Csv {
                line: i + 1,
                msg: format!("bad number '{}'", fields[k]),
            })
        };
        records.push(DepthRecord {
            n: num(0)? as usize,
            n1: num(1)?,
            n2: num(2)?,
            depth_a: num(3)? as usize,
            depth_b: num(4)? as usize,
            gates_a: num(5)? as usize,
            gates_b: num(6)? as usize,
        });
    }
    Ok(records)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthRow {
    pub n: usize,
    pub max_depth_a: usize,
    pub max_depth_b: usize,
    /// `max_depth(n) / max_depth(n - 1)`; absent for the first qubit count.
    pub ratio_a: Option<f64>,
    pub ratio_b: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthReport {
    pub rows: Vec<GrowthRow>,
    pub max_ratio: f64,
    /// True when any consecutive ratio exceeds [`GROWTH_RATIO_LIMIT`].
    pub exponential_flag: bool,
}

/// Max-over-ranges depth per qubit count and the ratio between consecutive counts.
///
/// Needs records for at least 4 consecutive qubit counts.
pub fn growth_check(records: &[DepthRecord]) -> Result<GrowthReport, DepthError> {
    let mut ns: Vec<usize> = records.iter().map(|r| r.n).collect();
    ns.sort_unstable();
    ns.dedup();
    let consecutive = ns.windows(2).all(|w| w[1] == w[0] + 1);
    if ns.len() < 4 || !consecutive {
        return Err(DepthError::InsufficientData(ns.len()));
    }
    let mut rows: Vec<GrowthRow> = Vec::with_capacity(ns.len());
    for &n in &ns {
        let of_n = records.iter().filter(|r| r.n == n);
        let max_a = of_n.clone().map(|r| r.depth_a).max().unwrap_or(0);
        let max_b = of_n.map(|r| r.depth_b).max().unwrap_or(0);
        let ratio = |prev: usize, cur: usize| {
            if prev == 0 {
                if cur == 0 {
                    1.0
                } else {
                    f64::INFINITY
                }
            } else {
                cur as f64 / prev as f64
            }
        };
        let (ratio_a, ratio_b) = match rows.last() {
            Some(p) => (
                Some(ratio(p.max_depth_a, max_a)),
                Some(ratio(p.max_depth_b, max_b)),
            ),
            None => (None, None),
        };
        rows.push(GrowthRow {
            n,
            max_depth_a: max_a,
            max_depth_b: max_b,
            ratio_a,
            ratio_b,
        });
    }
    let max_ratio = rows
        .iter()
        .flat_map(|r| [r.ratio_a, r.ratio_b])
        .flatten()
        .fold(0.0, f64::max);
    Ok(GrowthReport {
        rows,
        max_ratio,
        exponential_flag: max_ratio > GROWTH_RATIO_LIMIT,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic(depth: impl Fn(usize) -> usize) -> Vec<DepthRecord> {
        (3..=7)
            .map(|n| DepthRecord {
                n,
                n1: 1,
                n2: 2,
                depth_a: depth(n),
                depth_b: depth(n),
                gates_a: 1,
                gates_b: 1,
            })
            .collect()
    }

    #[test]
    fn interior_range_count() {
        assert_eq!(interior_ranges(3).count(), 15);
        assert!(interior_ranges(3).all(|(a, b)| 0 < a && a < b && b < 7));
        assert_eq!(interior_ranges(4).count(), 14 * 13 / 2);
    }

    #[test]
    fn bad_bounds() {
        let b = BasisSet::default();
        assert_eq!(sweep(2, 4, &b).unwrap_err(), DepthError::BadBounds(2, 4));
        assert!(sweep(5, 4, &b).is_err());
        assert!(sweep(3, 11, &b).is_err());
    }

    #[test]
    fn growth_of_constant_and_doubling() {
        let flat = growth_check(&synthetic(|_| 10)).unwrap();
        assert!(flat.rows[1..].iter().all(|r| r.ratio_a == Some(1.0)));
        assert!(!flat.exponential_flag);
        let doubling = growth_check(&synthetic(|n| 1 << (2 * n))).unwrap();
        assert!(doubling.exponential_flag);
        assert!(growth_check(&synthetic(|_| 1)[..3]).is_err());
    }

    #[test]
    fn growth_needs_consecutive_counts() {
        let mut rs = synthetic(|_| 5);
        rs.remove(2);
        assert_eq!(growth_check(&rs), Err(DepthError::InsufficientData(4)));
    }

    #[test]
    fn stats_median() {
        assert_eq!(Stats::of(&mut [3, 1, 2]).median, 2.0);
        assert_eq!(Stats::of(&mut [4, 1, 2, 3]).median, 2.5);
    }

    #[test]
    fn csv_round_trip() {
        let s = sweep(3, 3, &BasisSet::default()).unwrap();
        let csv = s.to_csv();
        assert!(csv.starts_with("# basis="));
        assert!(csv.contains("routing=none"));
        assert_eq!(parse_csv(&csv).unwrap(), s.records);
        assert!(parse_csv("n,n1\n").is_err());
    }
}
