//! Formula-vs-oracle sweeps over every valid `delta` of a `(q, m, family)` point.

use serde::Serialize;

use super::{anchor_leader, gap_scan, DualSweep, DuallyOracle, ThresholdProfile};
use crate::closed_forms::{
    delta1, delta2, dually_bch_even_like, dually_bch_negacyclic, i_delta_cyclic, neg_gaps, neg_regime,
    phi_leaders_formula, FormulaCase,
};
use crate::cyclotomic::{Family, LeaderTable, Parity};
use crate::dec;
use crate::error::{FormulaError, OracleError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Delta1,
    Delta2,
    Phi1,
    Phi2,
    Phi3,
    IDelta,
    NegLow,
    NegHigh,
    DuallyEvenLike,
    DuallyNegacyclic,
}

impl Check {
    pub fn as_str(self) -> &'static str {
        match self {
            Check::Delta1 => "delta1",
            Check::Delta2 => "delta2",
            Check::Phi1 => "phi1",
            Check::Phi2 => "phi2",
            Check::Phi3 => "phi3",
            Check::IDelta => "i-delta",
            Check::NegLow => "neg-low",
            Check::NegHigh => "neg-high",
            Check::DuallyEvenLike => "dually-even-like",
            Check::DuallyNegacyclic => "dually-negacyclic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Agree,
    Mismatch,
    /// No table row applies; the oracle value stands alone.
    Uncovered,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridRow {
    #[serde(with = "dec")]
    pub q: u64,
    pub m: u32,
    pub family: Family,
    pub check: Check,
    #[serde(with = "dec::opt")]
    pub delta: Option<u64>,
    pub formula: Option<String>,
    pub oracle: String,
    pub case: Option<String>,
    pub status: Status,
}

impl GridRow {
    pub const CSV_HEADER: [&'static str; 9] = ["q", "m", "family", "check", "delta", "formula", "oracle", "case", "status"];

    pub fn csv_record(&self) -> [String; 9] {
        [
            self.q.to_string(),
            self.m.to_string(),
            self.family.to_string(),
            self.check.as_str().to_string(),
            self.delta.map(|d| d.to_string()).unwrap_or_default(),
            self.formula.clone().unwrap_or_default(),
            self.oracle.clone(),
            self.case.clone().unwrap_or_default(),
            match self.status {
                Status::Agree => "agree",
                Status::Mismatch => "mismatch",
                Status::Uncovered => "uncovered",
            }
            .to_string(),
        ]
    }
}

/// Counts per status plus every row that did not agree.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct GridSummary {
    pub rows: usize,
    pub agree: usize,
    pub mismatch: usize,
    pub uncovered: usize,
    pub discrepancies: Vec<GridRow>,
}

impl GridSummary {
    pub fn push(&mut self, row: GridRow) {
        self.rows += 1;
        match row.status {
            Status::Agree => self.agree += 1,
            Status::Mismatch => self.mismatch += 1,
            Status::Uncovered => self.uncovered += 1,
        }
        if row.status != Status::Agree {
            self.discrepancies.push(row);
        }
    }

    pub fn merge(&mut self, other: GridSummary) {
        self.rows += other.rows;
        self.agree += other.agree;
        self.mismatch += other.mismatch;
        self.uncovered += other.uncovered;
        self.discrepancies.extend(other.discrepancies);
    }
}

/// Formula errors that mean "no row for this delta" rather than "outside the domain".
fn uncovered(e: &FormulaError) -> bool {
    matches!(
        e,
        FormulaError::NoCaseMatched { .. } | FormulaError::MultipleCasesMatched { .. } | FormulaError::NonIntegral { .. }
    )
}

struct Emitter<'a> {
    q: u64,
    m: u32,
    family: Family,
    sink: &'a mut dyn FnMut(GridRow),
}

impl Emitter<'_> {
    fn emit(&mut self, check: Check, delta: Option<u64>, formula: Option<String>, oracle: String, case: Option<&FormulaCase>) {
        let status = match &formula {
            None => Status::Uncovered,
            Some(f) if *f == oracle => Status::Agree,
            Some(_) => Status::Mismatch,
        };
        (self.sink)(GridRow {
            q: self.q,
            m: self.m,
            family: self.family,
            check,
            delta,
            formula,
            oracle,
            case: case.map(|c| c.id()),
            status,
        });
    }

    fn value(&mut self, check: Check, delta: Option<u64>, formula: Result<i128, FormulaError>, oracle: Option<u64>) {
        let shown = oracle.map_or_else(|| "none".to_string(), |v| v.to_string());
        match formula {
            Ok(v) => self.emit(check, delta, Some(v.to_string()), shown, None),
            Err(e) if uncovered(&e) => self.emit(check, delta, None, shown, None),
            Err(e) => self.emit(check, delta, Some(format!("error: {e}")), shown, None),
        }
    }
}

fn opt_str(v: Option<u64>) -> String {
    v.map_or_else(|| "none".to_string(), |v| v.to_string())
}

/// Runs every applicable check for one `(q, m, family)` and streams the rows.
/// Points outside every formula's preconditions produce no rows.
pub fn sweep_point(q: u64, m: u32, family: Family, sink: &mut dyn FnMut(GridRow)) -> Result<(), OracleError> {
    let mut em = Emitter { q, m, family, sink };
    match family {
        Family::Cyclic => sweep_cyclic(q, m, &mut em),
        Family::Negacyclic => sweep_negacyclic(q, m, &mut em),
    }
}

pub fn summarize_point(q: u64, m: u32, family: Family) -> Result<GridSummary, OracleError> {
    let mut s = GridSummary::default();
    sweep_point(q, m, family, &mut |r| s.push(r))?;
    Ok(s)
}

fn sweep_cyclic(q: u64, m: u32, em: &mut Emitter) -> Result<(), OracleError> {
    if delta1(q, m).is_err() {
        return Ok(());
    }
    let n = Family::Cyclic.length(q, m)?;
    let table = LeaderTable::build(q, n)?;
    let top = table.kth_largest(1, Parity::All)?;
    em.value(Check::Delta1, None, delta1(q, m), Some(top));
    let even_like_ok = delta2(q, m).is_ok();
    if even_like_ok {
        em.value(Check::Delta2, None, delta2(q, m), table.kth_largest(2, Parity::All).ok());
    }

    let mut sweep = DualSweep::new(q, m, Family::Cyclic, 1, 2)?;
    for delta in 2..=top {
        let scan = gap_scan(sweep.tperp(), top)?;
        match i_delta_cyclic(q, m, delta) {
            Ok((v, case)) => em.emit(Check::IDelta, Some(delta), Some(v.to_string()), opt_str(scan.low), Some(&case)),
            Err(e) => em.value(Check::IDelta, Some(delta), Err(e), scan.low),
        }
        if delta < top {
            sweep.advance();
        }
    }

    if even_like_ok {
        let profile = ThresholdProfile::build(&table, 1);
        let mut oracle = DuallyOracle::new(q, n)?;
        let mut sweep = DualSweep::even_like(q, m, 2)?;
        for delta in 2..=top {
            // T⊥ holds exactly the residues with leader >= delta
            let verdict = profile.may_be_dually(delta) && oracle.is_dually(sweep.tperp());
            em.value_bool(Check::DuallyEvenLike, delta, dually_bch_even_like(q, m, delta), verdict);
            if delta < top {
                sweep.advance();
            }
        }
    }
    Ok(())
}

fn sweep_negacyclic(q: u64, m: u32, em: &mut Emitter) -> Result<(), OracleError> {
    let Ok(regime) = neg_regime(q, m) else {
        return Ok(());
    };
    let modulus = Family::Negacyclic.length(q, m)? * 2;
    let table = LeaderTable::build(q, modulus)?;
    let phi = phi_leaders_formula(q, m)?;
    let odd = |k| table.kth_largest(k, Parity::Odd).ok();
    let anchor = anchor_leader(q, m, Family::Negacyclic)?;
    em.value(Check::Phi1, None, Ok(phi.phi1), odd(1));
    em.value(Check::Phi2, None, Ok(phi.phi2), odd(2));
    if let Some(p3) = phi.phi3 {
        em.value(Check::Phi3, None, Ok(p3), odd(3));
    }

    // valid delta: 2 <= delta < (phi_1 + 3) / 2, from the sweep's phi_1
    let end = (anchor + 3).div_ceil(2);
    let profile = ThresholdProfile::build(&table, 2);
    let mut oracle = DuallyOracle::new(q, modulus)?;
    let mut sweep = DualSweep::new(q, m, Family::Negacyclic, 1, 2)?;
    for delta in 2..end {
        let tperp = sweep.tperp();
        let scan = gap_scan(tperp, anchor)?;
        match neg_gaps(q, m, delta) {
            Ok(g) => {
                if let Some(lo) = &g.low {
                    em.emit(Check::NegLow, Some(delta), Some(lo.value.to_string()), opt_str(scan.low), Some(&lo.case));
                }
                if let Some(hi) = &g.high {
                    em.emit(Check::NegHigh, Some(delta), Some(hi.value.to_string()), opt_str(scan.high), Some(&hi.case));
                }
            }
            Err(e) if uncovered(&e) => {
                em.emit(Check::NegLow, Some(delta), None, opt_str(scan.low), None);
                if regime.two_gaps() {
                    em.emit(Check::NegHigh, Some(delta), None, opt_str(scan.high), None);
                }
            }
            Err(e) => em.value(Check::NegLow, Some(delta), Err(e), scan.low),
        }
        // odd leaders >= 2 delta - 1 remain in T⊥
        let verdict = profile.may_be_dually(2 * delta - 1) && oracle.is_dually(tperp);
        em.value_bool(Check::DuallyNegacyclic, delta, dually_bch_negacyclic(q, m, delta), verdict);
        if delta + 1 < end {
            sweep.advance();
        }
    }
    Ok(())
}

impl Emitter<'_> {
    fn value_bool(&mut self, check: Check, delta: u64, formula: Result<bool, FormulaError>, oracle: bool) {
        let formula = match formula {
            Ok(b) => Some(b.to_string()),
            Err(e) if uncovered(&e) => None,
            Err(e) => Some(format!("error: {e}")),
        };
        self.emit(check, Some(delta), formula, oracle.to_string(), None);
    }
}
