//! Cyclic family, length `q^m + 1`.

use super::{check_q, delta1, delta2, lookup, rat, span, BoundReport, FormulaCase, GapValue, Pow, Row};
use crate::cyclotomic::Family;
use crate::error::FormulaError;

const GAP: &str = "cyclic-gap";

fn gap_rows(w: Pow) -> Vec<Row> {
    let (q, m, qm) = (w.q, w.m, w.qm());
    let mut rows = Vec::new();
    for l0 in span(1, m - 1) {
        let a = w.p(l0);
        for l1 in span(0, (q - 3) / 2) {
            let at = rat(a - q + 2 * l1 + 4, 2);
            let v = rat(qm - w.p(m - l0 + 1) + 2 * (l1 + 1) * w.p(m - l0), 2);
            rows.push(Row::point(1, at, v).l0(l0).l1(l1));
        }
        for l1 in span(0, (q - 3) / 2 - 1) {
            let lo = rat(2 * l1 * a + a + 3, 2);
            let hi = rat(2 * (l1 + 1) * a + a + 3, 2);
            let v = rat(qm - w.p(m - l0) + 2 * (l1 + 1), 2);
            rows.push(Row::new(2, lo, hi, v).open().l0(l0).l1(l1));
        }
    }
    for l0 in span(1, m - 2) {
        let lo = rat(w.p(l0 + 1) - 2 * w.p(l0) + 3, 2);
        let hi = rat(w.p(l0 + 1) - q + 4, 2);
        let v = rat(qm - w.p(m - l0) + q - 1, 2);
        rows.push(Row::new(3, lo, hi, v).open().l0(l0));
    }
    let lo = rat(qm - 2 * w.p(m - 1) + 3, 2);
    rows.push(Row::new(4, lo, rat(qm + 1, 2), rat(qm - 1, 2)));
    rows
}

fn in_range(q: u64, m: u32, delta: u64) -> Result<i128, FormulaError> {
    check_q(q)?;
    if m < 2 {
        return Err(FormulaError::UnsupportedM { m });
    }
    let d1 = delta1(q, m)?;
    if delta < 2 || delta as i128 > d1 {
        return Err(FormulaError::DeltaOutOfRange { delta, lo: 2, hi: d1 });
    }
    Ok(d1)
}

/// The largest `I < delta_1` outside the dual defining set with
/// `(I, delta_1]` inside it, for the narrow-sense cyclic code.
pub fn i_delta_cyclic(q: u64, m: u32, delta: u64) -> Result<(i128, FormulaCase), FormulaError> {
    in_range(q, m, delta)?;
    let w = Pow::new(q, m)?;
    lookup(GAP, &gap_rows(w), delta)
}

/// `n - 2 I(delta)`: the run `I+1, ..., n-I-1` sits in the dual defining set.
pub fn dual_bound_cyclic(q: u64, m: u32, delta: u64) -> Result<BoundReport, FormulaError> {
    let (i, case) = i_delta_cyclic(q, m, delta)?;
    let n = Pow::new(q, m)?.qm() + 1;
    Ok(BoundReport {
        q,
        m,
        family: Family::Cyclic,
        delta,
        n,
        gaps: vec![GapValue { name: "I", value: i, case }],
        bound_case: None,
        lower_bound: n - 2 * i,
        warnings: Vec::new(),
    })
}

/// Whether the even-like subcode with defining set `C_0 ∪ ... ∪ C_{delta-1}`
/// has a BCH dual.
pub fn dually_bch_even_like(q: u64, m: u32, delta: u64) -> Result<bool, FormulaError> {
    let d1 = in_range(q, m, delta)?;
    let d2 = delta2(q, m)?;
    let d = delta as i128;
    Ok(if m == 2 { d == 2 || (d2 <= d && d <= d1) } else { d2 < d && d <= d1 })
}
