//! Negacyclic family, length `(q^m + 1) / 2`, `q = 3 mod 4`.
//!
//! Gap positions are odd residues mod `2n` on either side of the largest
//! odd leader `phi_1`. For even `m` the dual defining set is symmetric about
//! `phi_1 = n`, so one gap `I` below it determines the run; for odd `m`
//! there is a gap `I1` below and a gap `I2` above.

use serde::Serialize;

use super::{
    check_q_neg, int, lookup, phi_leaders_formula, rat, span, BoundReport, FormulaCase, GapValue, PhiLeaders, Pow, Row,
    Warning,
};
use crate::cyclotomic::Family;
use crate::error::FormulaError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NegRegime {
    /// q = 3, m odd
    TernaryOdd,
    /// q = 3, m even, m > 2
    TernaryEven,
    /// q > 3, m odd
    Odd,
    /// q > 3, m even
    Even,
}

impl NegRegime {
    pub fn two_gaps(self) -> bool {
        matches!(self, NegRegime::TernaryOdd | NegRegime::Odd)
    }
}

pub fn neg_regime(q: u64, m: u32) -> Result<NegRegime, FormulaError> {
    check_q_neg(q)?;
    match (q == 3, m % 2 == 1) {
        _ if m < 2 => Err(FormulaError::UnsupportedM { m }),
        (true, true) => Ok(NegRegime::TernaryOdd),
        (true, false) if m > 2 => Ok(NegRegime::TernaryEven),
        (true, false) => Err(FormulaError::UnsupportedM { m }),
        (false, true) => Ok(NegRegime::Odd),
        (false, false) => Ok(NegRegime::Even),
    }
}

const Q3_LOW: &str = "neg-q3-odd-low";
const Q3_HIGH: &str = "neg-q3-odd-high";
const Q3_BOUND: &str = "neg-q3-odd-bound";
const Q3_EVEN: &str = "neg-q3-even-gap";
const ODD_LOW: &str = "neg-odd-low";
const ODD_HIGH: &str = "neg-odd-high";
const EVEN: &str = "neg-even-gap";

fn q3_low_rows(w: Pow, phi: &PhiLeaders) -> Vec<Row> {
    let (m, qm) = (w.m, w.qm());
    let mut rows = Vec::new();
    for l in span(1, (m - 3) / 2) {
        rows.push(Row::new(1, rat(w.p(2 * l) + 7, 8), rat(w.p(2 * l + 1) - 3, 8), rat(qm - 5 * w.p(m - 2 * l), 4)).l(l));
        rows.push(Row::point(2, rat(w.p(2 * l + 1) + 5, 8), rat(qm - 7 * w.p(m - 2 * l - 1), 4)).l(l));
        rows.push(
            Row::new(3, rat(w.p(2 * l + 1) + 13, 8), rat(w.p(2 * l + 2) - 1, 8), rat(qm - w.p(m - 2 * l) + 4, 4)).l(l),
        );
    }
    rows.push(Row::new(4, rat(w.p(m - 1) + 7, 8), rat(19 * w.p(m - 3) + 5, 8), rat(qm - 15, 4)));
    rows.push(Row::new(5, rat(19 * w.p(m - 3) + 13, 8), rat(phi.phi2 + 3, 2), rat(qm - 7, 4)).open());
    rows
}

fn q3_high_rows(w: Pow) -> Vec<Row> {
    let (m, qm) = (w.m, w.qm());
    span(1, (m - 1) / 2)
        .map(|l| {
            Row::new(1, rat(w.p(2 * l - 1) + 13, 8), rat(w.p(2 * l + 1) + 5, 8), rat(qm + w.p(m - 2 * l + 1), 4)).l(l)
        })
        .collect()
}

/// Bound rows for `delta >= 4`; `delta` in {2, 3} is handled before lookup.
fn q3_bound_rows(w: Pow, phi: &PhiLeaders) -> Vec<Row> {
    let m = w.m;
    let mut rows = Vec::new();
    for l in span(1, (m - 3) / 2) {
        rows.push(Row::point(2, rat(w.p(2 * l + 1) + 5, 8), int(2 * w.p(m - 2 * l - 1))).l(l));
        rows.push(
            Row::new(3, rat(w.p(2 * l + 1) + 13, 8), rat(w.p(2 * l + 2) - 1, 8), rat(w.p(m - 2 * l) - 1, 2)).l(l),
        );
    }
    for l in span(2, (m - 3) / 2) {
        rows.push(Row::new(4, rat(w.p(2 * l) + 7, 8), rat(w.p(2 * l + 1) - 3, 8), int(w.p(m - 2 * l))).l(l));
    }
    rows.push(Row::new(5, rat(w.p(m - 1) + 7, 8), rat(19 * w.p(m - 3) + 5, 8), int(3)));
    rows.push(Row::new(6, rat(19 * w.p(m - 3) + 13, 8), rat(phi.phi1 + 3, 2), int(2)).open());
    rows
}

fn q3_even_rows(w: Pow) -> Vec<Row> {
    let (m, qm) = (w.m, w.qm());
    let mut rows = Vec::new();
    for l in span(1, (m - 2) / 2) {
        rows.push(Row::new(1, rat(w.p(2 * l - 1) + 5, 4), rat(w.p(2 * l) + 3, 4), rat(qm - w.p(m - 2 * l + 1), 2)).l(l));
        rows.push(
            Row::new(2, rat(w.p(2 * l) + 7, 4), rat(w.p(2 * l + 1) + 1, 4), rat(qm - w.p(m - 2 * l) + 2, 2)).l(l),
        );
    }
    rows
}

/// `(Delta, Delta')` for exponent `2 l0 - 1`; `Delta_{l0+1}` is `deltas(l0 + 1).0`.
fn deltas(w: Pow, l0: i128) -> (i128, i128) {
    let q = w.q;
    let base = w.p(2 * l0 - 1) + 1;
    let d = rat((q - 1) * base, 2 * (q + 1)).exact().expect("q = 3 mod 4 makes this integral");
    let dp = rat((q + 3) * base, 2 * (q + 1)).exact().expect("q = 3 mod 4 makes this integral");
    (d, dp)
}

fn odd_low_rows(w: Pow) -> Vec<Row> {
    let (q, m) = (w.q, w.m);
    let mut rows = Vec::new();
    for l0 in span(1, (m - 1) / 2) {
        let (d, dp) = deltas(w, l0);
        let dn = deltas(w, l0 + 1).0;
        let a = w.p(2 * l0 - 1);
        let b = w.p(2 * l0);
        let s1 = w.p(m - 2 * l0 + 1);
        let s0 = w.p(m - 2 * l0);
        for l1 in span(0, (q - 7) / 4 - 1) {
            let at = rat(2 * d - q + 9 + 4 * l1, 4);
            rows.push(Row::point(1, at, rat((2 * d - q + 3 + 4 * l1) * s1, 2)).l0(l0).l1(l1));
        }
        rows.push(Row::new(2, rat(d + 1, 2), rat(dp + 1, 2), int((d - 2) * s1)).l0(l0));
        for l1 in span(0, (q - 7) / 4 - 1) {
            let lo = rat(2 * l1 * a + dp + 3, 2);
            let hi = rat(2 * (l1 + 1) * a + dp + 1, 2);
            rows.push(Row::new(3, lo, hi, int((a - dp) * s1 + 2 * l1 + 1)).l0(l0).l1(l1));
        }
        let lo = rat((q - 7) * a + 2 * dp + 6, 4);
        rows.push(Row::new(4, lo, rat(q * d - q + 2, 2), rat(2 * (a - dp) * s1 + q - 5, 2)).l0(l0));
        for l1 in span(0, (q - 3) / 4 - 1) {
            let at = rat(q * d - q + 4 + 2 * l1, 2);
            rows.push(Row::point(5, at, int((q * d - q + 2 * l1 + 1) * s0)).l0(l0).l1(l1));
        }
        let lo = rat(2 * q * d - q + 5, 4);
        rows.push(Row::new(6, lo, rat(2 * q * dp - q + 1, 4), rat((2 * q * d - q - 1) * s0, 2)).l0(l0));
        let head = (2 * b - 2 * q * dp + q + 1) * s0;
        for l1 in span(0, (q - 7) / 4 - 1) {
            let lo = rat(4 * l1 * b + 2 * q * dp - q + 5, 4);
            let hi = rat(4 * (l1 + 1) * b + 2 * q * dp - q + 1, 4);
            rows.push(Row::new(7, lo, hi, rat(head + 4 * l1 + 2, 2)).l0(l0).l1(l1));
        }
        // Printed with a (q - 7)/2 tail, which is even; I1 is odd and row 7
        // steps by 2 l1 + 1, so the last row ends at (q - 5)/2.
        let lo = rat((q - 7) * b + 2 * q * dp - q + 5, 4);
        rows.push(Row::new(8, lo, rat(2 * dn - q + 5, 4), rat(head + q - 5, 2)).l0(l0));
    }
    rows
}

fn odd_high_rows(w: Pow, phi: &PhiLeaders) -> Vec<Row> {
    let (q, m, qm) = (w.q, w.m, w.qm());
    let q1 = w.p(m - 1);
    let q2 = w.p(m - 2);
    let qp = w.p(m + 1);
    let mut rows = Vec::new();
    for l1 in span(0, (q - 7) / 4) {
        rows.push(Row::point(1, int(l1 + 2), int((q - 2 * l1 - 1) * q1 + 1)).l1(l1));
        let lo = rat(4 * l1 * q + q + 5, 4);
        let hi = rat(4 * (l1 + 1) * q + q + 1, 4);
        rows.push(Row::new(2, lo, hi, rat(qm - q1 - 4 * l1, 2)).l1(l1));
    }
    rows.push(Row::point(3, rat(q * q - 2 * q + 5, 4), rat(qm - q1 - q + 3, 2)));
    for l0 in span(1, (m - 3) / 2) {
        let d = deltas(w, l0).0;
        let dn = deltas(w, l0 + 1).0;
        let b = w.p(2 * l0);
        let c = w.p(2 * l0 + 1);
        let head = (2 * q * d - q + 3) * w.p(m - 2 * l0);
        let tail = w.p(m - 2 * l0 - 1) * dn;
        for l1 in span(0, (q - 7) / 4) {
            let lo = rat(4 * l1 * b + 2 * q * d - q + 9, 4);
            let hi = rat(4 * (l1 + 1) * b + 2 * q * d - q + 5, 4);
            rows.push(Row::new(4, lo, hi, rat(head - 4 * l1, 2)).l0(l0).l1(l1));
        }
        let lo = rat((q - 3) * b + 2 * q * d - q + 9, 4);
        rows.push(Row::new(5, lo, rat(dn + 1, 2), rat(head - (q - 3), 2)).l0(l0));
        for l1 in span(0, (q - 7) / 4) {
            let lo = rat(2 * l1 * c + dn + 3, 2);
            let hi = rat(2 * (l1 + 1) * c + dn + 1, 2);
            rows.push(Row::new(6, lo, hi, int(tail - 2 * l1)).l0(l0).l1(l1));
        }
        let lo = rat((q - 3) * c + 2 * dn + 6, 4);
        rows.push(Row::new(7, lo, rat(2 * q * dn - q + 5, 4), rat(2 * tail - q + 3, 2)).l0(l0));
    }
    let den = 4 * (q + 1);
    for l1 in span(0, (q - 7) / 4 - 1) {
        let lo = rat(den * l1 * q1 + qm - q1 + 7 * q + 9, den);
        let hi = rat(den * (l1 + 1) * q1 + qm - q1 + 3 * q + 5, den);
        rows.push(Row::new(8, lo, hi, rat(qp - qm + q * q + 3 * q - 4 * (q + 1) * l1, 2 * (q + 1))).l1(l1));
    }
    let lo = rat(qp - 5 * qm - 8 * q1 + 7 * q + 9, den);
    let hi = rat(qp - qm - 4 * q1 - 4 * q2 + 3 * q + 1, den);
    rows.push(Row::new(9, lo, hi, rat(qp - qm + 9 * q + 7, 2 * (q + 1))));
    let lo = rat(qp - qm - 4 * q1 - 4 * q2 + 7 * q + 5, den);
    rows.push(Row::new(10, lo, rat(phi.phi2 + 3, 2), rat(qp - qm + 5 * q + 3, 2 * (q + 1))).open());
    rows
}

fn even_rows(w: Pow) -> Vec<Row> {
    let (q, m, qm) = (w.q, w.m, w.qm());
    let mut rows = Vec::new();
    for l0 in span(1, m / 2) {
        let a = w.p(2 * l0 - 1);
        let b = w.p(2 * l0);
        let s1 = w.p(m - 2 * l0 + 1);
        for l1 in span(1, (q - 3) / 4) {
            let at = rat(a - q + 4 + 4 * l1, 4);
            rows.push(Row::point(1, at, rat((a - q - 2 + 4 * l1) * s1, 2)).l0(l0).l1(l1));
        }
        rows.push(Row::new(2, rat(a + 5, 4), rat(3 * a + 3, 4), rat(qm - s1, 2)).l0(l0));
        for l1 in span(1, (q - 3) / 4 - 1) {
            let lo = rat((4 * l1 - 1) * a + 7, 4);
            let hi = rat((4 * l1 + 3) * a + 3, 4);
            rows.push(Row::new(3, lo, hi, rat(qm - s1 + 4 * l1, 2)).l0(l0).l1(l1));
        }
        rows.push(Row::new(4, rat((q - 4) * a + 7, 4), rat(b - q + 6, 4), rat(qm - s1 + q - 3, 2)).l0(l0));
    }
    for l0 in span(1, m / 2 - 1) {
        let b = w.p(2 * l0);
        let s0 = w.p(m - 2 * l0);
        for l1 in span(1, (q - 3) / 4) {
            let at = rat(b - q + 6 + 4 * l1, 4);
            rows.push(Row::point(5, at, rat((b - q + 4 * l1) * s0, 2)).l0(l0).l1(l1));
        }
        for l1 in span(0, (q - 3) / 4 - 1) {
            let lo = rat((4 * l1 + 1) * b + 7, 4);
            let hi = rat((4 * l1 + 5) * b + 3, 4);
            rows.push(Row::new(6, lo, hi, rat(qm - s0 + 2 + 4 * l1, 2)).l0(l0).l1(l1));
        }
        let lo = rat((q - 2) * b + 7, 4);
        rows.push(Row::new(7, lo, rat(w.p(2 * l0 + 1) - q + 4, 4), rat(qm - s0 + q - 1, 2)).l0(l0));
    }
    rows
}

/// Gap positions around `phi_1`; `low` is `I` (even m) or `I1`, `high` is `I2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NegGaps {
    pub regime: NegRegime,
    pub low: Option<GapValue>,
    pub high: Option<GapValue>,
}

struct Setup {
    regime: NegRegime,
    w: Pow,
    phi: PhiLeaders,
    /// `delta < (phi_2 + 3) / 2`
    below_phi2: bool,
}

fn setup(q: u64, m: u32, delta: u64) -> Result<Setup, FormulaError> {
    let regime = neg_regime(q, m)?;
    let phi = phi_leaders_formula(q, m)?;
    let top = rat(phi.phi1 + 3, 2);
    if delta < 2 || !top.gt_int(delta as i128) {
        return Err(FormulaError::DeltaOutOfRange { delta, lo: 2, hi: top.below() });
    }
    let below_phi2 = rat(phi.phi2 + 3, 2).gt_int(delta as i128);
    Ok(Setup { regime, w: Pow::new(q, m)?, phi, below_phi2 })
}

fn gap(name: &'static str, found: (i128, FormulaCase)) -> GapValue {
    GapValue { name, value: found.0, case: found.1 }
}

/// Rows whose printed value was adjusted (see `odd_low_rows`).
pub fn is_corrected(case: &FormulaCase) -> bool {
    case.table == ODD_LOW && case.row == 8
}

pub fn neg_gaps(q: u64, m: u32, delta: u64) -> Result<NegGaps, FormulaError> {
    let s = setup(q, m, delta)?;
    let (low, high) = match s.regime {
        NegRegime::TernaryOdd => {
            let low = if s.below_phi2 { Some(gap("I1", lookup(Q3_LOW, &q3_low_rows(s.w, &s.phi), delta)?)) } else { None };
            (low, Some(gap("I2", lookup(Q3_HIGH, &q3_high_rows(s.w), delta)?)))
        }
        NegRegime::TernaryEven => (Some(gap("I", lookup(Q3_EVEN, &q3_even_rows(s.w), delta)?)), None),
        NegRegime::Odd if s.below_phi2 => (
            Some(gap("I1", lookup(ODD_LOW, &odd_low_rows(s.w), delta)?)),
            Some(gap("I2", lookup(ODD_HIGH, &odd_high_rows(s.w, &s.phi), delta)?)),
        ),
        NegRegime::Even if s.below_phi2 => (Some(gap("I", lookup(EVEN, &even_rows(s.w), delta)?)), None),
        NegRegime::Odd | NegRegime::Even => (None, None),
    };
    Ok(NegGaps { regime: s.regime, low, high })
}

pub fn dual_bound_negacyclic(q: u64, m: u32, delta: u64) -> Result<BoundReport, FormulaError> {
    let s = setup(q, m, delta)?;
    let gaps = neg_gaps(q, m, delta)?;
    let n = (s.w.qm() + 1) / 2;
    let mut warnings = Vec::new();
    let mut bound_case = None;
    let run = |g: &NegGaps| -> Option<i128> {
        match (&g.low, &g.high) {
            (Some(lo), Some(hi)) => Some((hi.value - lo.value) / 2),
            (Some(lo), None) => Some(n - lo.value),
            _ => None,
        }
    };
    let lower_bound = match s.regime {
        NegRegime::TernaryOdd => {
            let (table, case) = if delta <= 3 {
                let v = rat(s.w.p(s.w.m - 1) + 1, 2).exact()?;
                (v, FormulaCase { table: Q3_BOUND, row: 1, ell0: None, ell1: None, ell: None })
            } else {
                lookup(Q3_BOUND, &q3_bound_rows(s.w, &s.phi), delta)?
            };
            bound_case = Some(case.clone());
            match run(&gaps) {
                Some(derived) if delta >= 4 && derived != table => {
                    warnings.push(Warning {
                        kind: "table-inconsistent",
                        message: format!(
                            "bound row {case} gives {table} but the run between the gaps gives {derived}; using {derived}"
                        ),
                    });
                    derived
                }
                _ => table,
            }
        }
        NegRegime::TernaryEven => run(&gaps).expect("single gap present"),
        NegRegime::Odd | NegRegime::Even => {
            if s.below_phi2 {
                run(&gaps).expect("gaps present below phi_2")
            } else {
                2
            }
        }
    };
    if let Some(lo) = gaps.low.as_ref().filter(|g| is_corrected(&g.case)) {
        warnings.push(Warning {
            kind: "table-corrected",
            message: format!("{} = {} uses the odd-valued form of row {}", lo.name, lo.value, lo.case),
        });
    }
    let mut gv = Vec::new();
    gv.extend(gaps.low);
    gv.extend(gaps.high);
    Ok(BoundReport {
        q,
        m,
        family: Family::Negacyclic,
        delta,
        n,
        gaps: gv,
        bound_case,
        lower_bound,
        warnings,
    })
}

pub fn dually_bch_negacyclic(q: u64, m: u32, delta: u64) -> Result<bool, FormulaError> {
    let s = setup(q, m, delta)?;
    let d = delta as i128;
    let from = |phi: i128| rat(phi + 3, 2).le_int(d);
    Ok(match s.regime {
        NegRegime::TernaryOdd => d <= 3 || from(s.phi.phi2),
        NegRegime::TernaryEven => from(s.phi.phi3.ok_or(FormulaError::Phi3Unavailable)?),
        NegRegime::Odd => from(s.phi.phi2),
        NegRegime::Even => (m == 2 && d == 2) || from(s.phi.phi2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaps_from_examples() {
        let g = neg_gaps(3, 3, 2).unwrap();
        assert_eq!(g.high.unwrap().value, 9);
        assert_eq!(g.low.unwrap().value, 3);
        assert_eq!(neg_gaps(3, 4, 2).unwrap().low.unwrap().value, 27);
        assert_eq!(neg_gaps(7, 2, 2).unwrap().low.unwrap().value, 7);
        assert_eq!(neg_gaps(7, 2, 6).unwrap().low.unwrap().value, 21);
        let g = neg_gaps(7, 3, 2).unwrap();
        assert_eq!((g.low.unwrap().value, g.high.unwrap().value), (49, 295));
    }

    #[test]
    fn bounds_from_examples() {
        assert_eq!(dual_bound_negacyclic(3, 3, 2).unwrap().lower_bound, 5);
        assert_eq!(dual_bound_negacyclic(3, 3, 4).unwrap().lower_bound, 2);
        assert_eq!(dual_bound_negacyclic(7, 2, 2).unwrap().lower_bound, 18);
        assert_eq!(dual_bound_negacyclic(7, 2, 6).unwrap().lower_bound, 4);
        assert_eq!(dual_bound_negacyclic(7, 3, 2).unwrap().lower_bound, 123);
        assert_eq!(dual_bound_negacyclic(3, 4, 7).unwrap().lower_bound, 4);
        // the single-gap run at delta = 2 for (3, 4) has n - I = 41 - 27
        assert_eq!(dual_bound_negacyclic(3, 4, 2).unwrap().lower_bound, 14);
    }

    #[test]
    fn ternary_odd_row_three_is_replaced_by_the_run() {
        let r = dual_bound_negacyclic(3, 5, 6).unwrap();
        assert_eq!(r.lower_bound, 4);
        assert_eq!(r.warnings.len(), 1);
        assert_eq!(r.warnings[0].kind, "table-inconsistent");
        assert!(dual_bound_negacyclic(3, 5, 4).unwrap().warnings.is_empty());
    }

    #[test]
    fn corrected_row_is_odd_and_flagged() {
        let g = neg_gaps(7, 3, 17).unwrap().low.unwrap();
        assert_eq!(g.value, 127);
        assert!(is_corrected(&g.case));
        let r = dual_bound_negacyclic(7, 3, 17).unwrap();
        assert!(r.warnings.iter().any(|w| w.kind == "table-corrected"));
    }

    #[test]
    fn dually_predicates() {
        assert!(dually_bch_negacyclic(3, 3, 4).unwrap());
        assert!(!dually_bch_negacyclic(3, 5, 4).unwrap());
        assert!(dually_bch_negacyclic(7, 4, 430).unwrap());
        assert!(!dually_bch_negacyclic(7, 4, 429).unwrap());
        assert!(dually_bch_negacyclic(7, 2, 2).unwrap());
        assert!(!dually_bch_negacyclic(7, 2, 3).unwrap());
    }

    #[test]
    fn domain_and_regimes() {
        assert_eq!(neg_regime(3, 2), Err(FormulaError::UnsupportedM { m: 2 }));
        assert_eq!(neg_regime(5, 3), Err(FormulaError::UnsupportedQ { q: 5 }));
        assert!(matches!(neg_gaps(3, 3, 5), Err(FormulaError::DeltaOutOfRange { hi: 4, .. })));
        // beyond the last row of the q = 3, even m table
        assert_eq!(neg_gaps(3, 4, 8), Err(FormulaError::NoCaseMatched { delta: 8 }));
    }
}
