//! Brute-force ground truth: gap scans over `T⊥`, dually-BCH detection from
//! raw cosets, exact minimum distances, and the formula-vs-oracle grids.

mod distance;
mod dually;
pub mod examples;
mod gaps;
pub mod grid;

use serde::Serialize;

use crate::closed_forms::{self, BoundReport, Warning};
use crate::code::bch_bound;
use crate::cyclotomic::Family;
use crate::dec;
use crate::error::OracleError;

pub use distance::{
    code_distance, distance_at_least, in_code, min_distance, min_distance_by_parity, weight, DistanceMethod, DistanceOptions,
    DistanceResult, DEFAULT_MAX_CODEWORDS, DEFAULT_MAX_NODES,
};
pub use dually::{dually_bch_oracle, witness_set, DuallyOracle, DuallyVerdict, ThresholdProfile, WitnessRun};
pub use gaps::{anchor_leader, gap_scan, DualSweep, GapScan};

/// The closed-form bound next to what the oracle sees in `T⊥`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundAudit {
    #[serde(with = "dec")]
    pub q: u64,
    pub m: u32,
    pub family: Family,
    #[serde(with = "dec")]
    pub delta: u64,
    #[serde(with = "dec")]
    pub n: u64,
    /// `None` when no closed form applies; see `formula_error`.
    pub formula: Option<BoundReport>,
    pub formula_error: Option<String>,
    pub oracle_gaps: GapScan,
    /// Bound from the run between the oracle's gaps.
    #[serde(with = "dec::opt")]
    pub oracle_run_bound: Option<u64>,
    /// `1 +` the longest run anywhere in `T⊥`.
    #[serde(with = "dec")]
    pub dual_bch_bound: u64,
    /// Formula gaps equal the oracle's and the formula bound does not exceed
    /// the BCH bound of `T⊥`.
    pub agree: bool,
    /// The formula bound when it agrees, otherwise the oracle's.
    #[serde(with = "dec")]
    pub lower_bound: u64,
    pub warnings: Vec<Warning>,
}

fn gap_agrees(scan: &GapScan, name: &str, value: i128) -> bool {
    let seen = match name {
        "I" | "I1" => scan.low,
        "I2" => scan.high,
        _ => None,
    };
    seen.is_some_and(|v| v as i128 == value)
}

/// Narrow-sense dual bound, formula and oracle side by side.
pub fn audit_bound(q: u64, m: u32, family: Family, delta: u64) -> Result<BoundAudit, OracleError> {
    let sweep = DualSweep::new(q, m, family, 1, delta)?;
    let tperp = sweep.tperp();
    let anchor = anchor_leader(q, m, family)?;
    let scan = gap_scan(tperp, anchor)?;
    let run = scan.run_bound(tperp.modulus(), tperp.step());
    let bch = bch_bound(tperp)?;
    let mut warnings = Vec::new();
    let (formula, formula_error) = match closed_forms::dual_bound(q, m, family, delta) {
        Ok(r) => (Some(r), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let agree = formula.as_ref().is_some_and(|r| {
        r.gaps.iter().all(|g| gap_agrees(&scan, g.name, g.value)) && r.lower_bound <= bch as i128
    });
    let lower_bound = match &formula {
        Some(r) if agree => r.lower_bound as u64,
        Some(r) => {
            warnings.push(Warning {
                kind: "oracle-disagrees",
                message: format!("formula bound {} does not match the oracle; using the BCH bound {bch} of T⊥", r.lower_bound),
            });
            bch
        }
        None => {
            warnings.push(Warning {
                kind: "uncovered",
                message: format!("no closed form applies; using the BCH bound {bch} of T⊥"),
            });
            bch
        }
    };
    if let Some(r) = &formula {
        warnings.extend(r.warnings.iter().cloned());
    }
    Ok(BoundAudit {
        q,
        m,
        family,
        delta,
        n: tperp.class_size(),
        formula,
        formula_error,
        oracle_gaps: scan,
        oracle_run_bound: run,
        dual_bch_bound: bch,
        agree,
        lower_bound,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn audits_agree_on_examples() {
        let a = audit_bound(3, 3, Family::Negacyclic, 2).unwrap();
        assert!(a.agree);
        assert_eq!(a.lower_bound, 5);
        assert_eq!(a.oracle_run_bound, Some(3));
        let c = audit_bound(5, 2, Family::Cyclic, 8).unwrap();
        assert!(c.agree);
        assert_eq!((c.lower_bound, c.oracle_run_bound), (4, Some(4)));
    }

    #[test]
    fn uncovered_falls_back_to_the_oracle() {
        let a = audit_bound(3, 4, Family::Negacyclic, 8).unwrap();
        assert!(a.formula.is_none());
        assert!(!a.agree);
        assert_eq!(a.lower_bound, a.dual_bch_bound);
        assert_eq!(a.warnings[0].kind, "uncovered");
    }
}
