//! Closed-form leaders, gap positions, dual-distance bounds and dually-BCH
//! ranges, evaluated in exact integer arithmetic.
//!
//! Each piecewise table is a list of `Row`s with rational endpoints and a
//! rational value. A lookup must hit exactly one row, and the value must be
//! an integer; anything else is reported as an error rather than rounded.

mod cyclic;
mod negacyclic;

use std::fmt;

use serde::Serialize;

use crate::cyclotomic::Family;
use crate::dec;
use crate::error::FormulaError;
use crate::field::PrimePower;

pub use cyclic::{dual_bound_cyclic, dually_bch_even_like, i_delta_cyclic};
pub use negacyclic::{dual_bound_negacyclic, dually_bch_negacyclic, is_corrected, neg_gaps, neg_regime, NegGaps, NegRegime};

/// Exact rational with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Rat {
    pub num: i128,
    pub den: i128,
}

pub(crate) fn rat(num: i128, den: i128) -> Rat {
    debug_assert!(den > 0);
    Rat { num, den }
}

pub(crate) fn int(v: i128) -> Rat {
    Rat { num: v, den: 1 }
}

impl Rat {
    pub fn le_int(self, d: i128) -> bool {
        self.num <= d * self.den
    }

    pub fn ge_int(self, d: i128) -> bool {
        self.num >= d * self.den
    }

    pub fn gt_int(self, d: i128) -> bool {
        self.num > d * self.den
    }

    pub fn exact(self) -> Result<i128, FormulaError> {
        if self.num % self.den != 0 {
            return Err(FormulaError::NonIntegral { num: self.num, den: self.den });
        }
        Ok(self.num / self.den)
    }

    /// Largest integer `< self`.
    pub fn below(self) -> i128 {
        (self.num - 1).div_euclid(self.den)
    }
}

/// Which table row produced a value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaCase {
    pub table: &'static str,
    pub row: u32,
    pub ell0: Option<i64>,
    pub ell1: Option<i64>,
    pub ell: Option<i64>,
}

impl Serialize for FormulaCase {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("FormulaCase", 5)?;
        st.serialize_field("id", &self.id())?;
        st.serialize_field("table", self.table)?;
        st.serialize_field("row", &self.row)?;
        for (k, v) in [("ell0", self.ell0), ("ell1", self.ell1), ("ell", self.ell)] {
            match v {
                Some(v) => st.serialize_field(k, &v)?,
                None => st.skip_field(k)?,
            }
        }
        st.end()
    }
}

impl FormulaCase {
    pub fn id(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for FormulaCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.table, self.row)?;
        let mut parts = Vec::new();
        if let Some(v) = self.ell0 {
            parts.push(format!("l0={v}"));
        }
        if let Some(v) = self.ell1 {
            parts.push(format!("l1={v}"));
        }
        if let Some(v) = self.ell {
            parts.push(format!("l={v}"));
        }
        if !parts.is_empty() {
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Row {
    pub row: u32,
    pub ell0: Option<i64>,
    pub ell1: Option<i64>,
    pub ell: Option<i64>,
    pub lo: Rat,
    pub hi: Rat,
    /// `delta < hi` instead of `delta <= hi`.
    pub hi_open: bool,
    pub value: Rat,
}

impl Row {
    pub fn new(row: u32, lo: Rat, hi: Rat, value: Rat) -> Self {
        Row { row, ell0: None, ell1: None, ell: None, lo, hi, hi_open: false, value }
    }

    pub fn point(row: u32, at: Rat, value: Rat) -> Self {
        Self::new(row, at, at, value)
    }

    pub fn open(mut self) -> Self {
        self.hi_open = true;
        self
    }

    pub fn l0(mut self, v: i128) -> Self {
        self.ell0 = Some(v as i64);
        self
    }

    pub fn l1(mut self, v: i128) -> Self {
        self.ell1 = Some(v as i64);
        self
    }

    pub fn l(mut self, v: i128) -> Self {
        self.ell = Some(v as i64);
        self
    }

    pub fn contains(&self, d: i128) -> bool {
        self.lo.le_int(d) && if self.hi_open { self.hi.gt_int(d) } else { self.hi.ge_int(d) }
    }

    fn case(&self, table: &'static str) -> FormulaCase {
        FormulaCase { table, row: self.row, ell0: self.ell0, ell1: self.ell1, ell: self.ell }
    }
}

/// Unique matching row, evaluated.
pub(crate) fn lookup(table: &'static str, rows: &[Row], delta: u64) -> Result<(i128, FormulaCase), FormulaError> {
    let d = delta as i128;
    let hits: Vec<&Row> = rows.iter().filter(|r| r.contains(d)).collect();
    match hits.as_slice() {
        [] => Err(FormulaError::NoCaseMatched { delta }),
        [r] => Ok((r.value.exact()?, r.case(table))),
        many => Err(FormulaError::MultipleCasesMatched {
            delta,
            rows: many.iter().map(|r| r.case(table).id()).collect(),
        }),
    }
}

/// Integers `lo..=hi` as `i128`, empty when `hi < lo`.
pub(crate) fn span(lo: i128, hi: i128) -> impl Iterator<Item = i128> {
    lo..=hi
}

/// Powers of a fixed base with the exponent range checked up front.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Pow {
    pub q: i128,
    pub m: i128,
}

impl Pow {
    /// Requires `q^(m+2)` to fit comfortably in i128.
    pub fn new(q: u64, m: u32) -> Result<Self, FormulaError> {
        let big = (q as i128).checked_pow(m + 2).ok_or(FormulaError::Overflow)?;
        if big > (1i128 << 110) {
            return Err(FormulaError::Overflow);
        }
        Ok(Pow { q: q as i128, m: m as i128 })
    }

    pub fn p(&self, e: i128) -> i128 {
        assert!((0..=self.m + 2).contains(&e), "exponent {e} outside the checked range");
        self.q.pow(e as u32)
    }

    pub fn qm(&self) -> i128 {
        self.p(self.m)
    }
}

fn check_q(q: u64) -> Result<(), FormulaError> {
    match PrimePower::odd(q) {
        Ok(_) => Ok(()),
        Err(_) => Err(FormulaError::UnsupportedQ { q }),
    }
}

fn check_q_neg(q: u64) -> Result<(), FormulaError> {
    check_q(q)?;
    if q % 4 != 3 {
        return Err(FormulaError::UnsupportedQ { q });
    }
    Ok(())
}

/// `delta_1 = (q^m + 1) / 2`, the largest coset leader mod `q^m + 1`.
pub fn delta1(q: u64, m: u32) -> Result<i128, FormulaError> {
    check_q(q)?;
    if m < 2 {
        return Err(FormulaError::UnsupportedM { m });
    }
    let w = Pow::new(q, m)?;
    Ok((w.qm() + 1) / 2)
}

/// Second largest coset leader mod `q^m + 1` (m odd or m = 2 mod 4).
pub fn delta2(q: u64, m: u32) -> Result<i128, FormulaError> {
    check_q(q)?;
    if m < 2 || m % 4 == 0 {
        return Err(FormulaError::UnsupportedM { m });
    }
    let w = Pow::new(q, m)?;
    let qq = w.q;
    let v = if m % 2 == 1 {
        rat((qq - 1) * (w.qm() + 1), 2 * (qq + 1))
    } else {
        rat((qq - 1) * (qq - 1) * (w.qm() + 1), 2 * (qq * qq + 1))
    };
    v.exact()
}

pub fn delta_leaders_formula(q: u64, m: u32) -> Result<(i128, i128), FormulaError> {
    Ok((delta1(q, m)?, delta2(q, m)?))
}

/// The three largest odd coset leaders mod `q^m + 1`, for `q = 3 mod 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PhiLeaders {
    #[serde(with = "dec")]
    pub phi1: i128,
    #[serde(with = "dec")]
    pub phi2: i128,
    #[serde(with = "dec::opt")]
    pub phi3: Option<i128>,
}

pub fn phi_leaders_formula(q: u64, m: u32) -> Result<PhiLeaders, FormulaError> {
    check_q_neg(q)?;
    if m < 2 {
        return Err(FormulaError::UnsupportedM { m });
    }
    let w = Pow::new(q, m)?;
    let (qq, qm) = (w.q, w.qm());
    let (phi1, phi2) = if m % 2 == 0 {
        ((qm + 1) / 2, (qm - 1) / 2 - w.p(w.m - 1))
    } else {
        (
            rat((qq - 1) * (qm + 1), 2 * (qq + 1)).exact()?,
            rat((qq - 1) * (qm - 2 * w.p(w.m - 2) - 1), 2 * (qq + 1)).exact()?,
        )
    };
    let phi3 = if qm < 25 {
        None
    } else if m % 2 == 0 {
        Some((qm - 1) / 2 - w.p(w.m - 1) - qq + 1)
    } else if m >= 5 {
        Some(phi2 - (qq - 1) * (qq - 1))
    } else {
        Some(rat((qq - 1) * (qm - 2 * qq - 1), 2 * (qq + 1)).exact()? - qq - 1)
    };
    Ok(PhiLeaders { phi1, phi2, phi3 })
}

pub fn phi3(q: u64, m: u32) -> Result<i128, FormulaError> {
    phi_leaders_formula(q, m)?.phi3.ok_or(FormulaError::Phi3Unavailable)
}

/// One gap position with the row that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapValue {
    pub name: &'static str,
    #[serde(with = "dec")]
    pub value: i128,
    pub case: FormulaCase,
}

/// Something the caller should know about a bound: a table inconsistency
/// or a disagreement with the oracle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Warning {
    pub kind: &'static str,
    pub message: String,
}

/// Lower bound on the dual distance, with provenance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    #[serde(with = "dec")]
    pub q: u64,
    pub m: u32,
    pub family: Family,
    #[serde(with = "dec")]
    pub delta: u64,
    #[serde(with = "dec")]
    pub n: i128,
    pub gaps: Vec<GapValue>,
    /// Row of the bound table when the bound is read from one directly.
    pub bound_case: Option<FormulaCase>,
    #[serde(with = "dec")]
    pub lower_bound: i128,
    pub warnings: Vec<Warning>,
}

impl BoundReport {
    pub fn gap(&self, name: &str) -> Option<i128> {
        self.gaps.iter().find(|g| g.name == name).map(|g| g.value)
    }
}

pub fn dual_bound(q: u64, m: u32, family: Family, delta: u64) -> Result<BoundReport, FormulaError> {
    match family {
        Family::Cyclic => dual_bound_cyclic(q, m, delta),
        Family::Negacyclic => dual_bound_negacyclic(q, m, delta),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_leaders() {
        assert_eq!(delta_leaders_formula(3, 2).unwrap(), (5, 2));
        assert_eq!(delta_leaders_formula(3, 3).unwrap(), (14, 7));
        assert_eq!(delta_leaders_formula(5, 2).unwrap(), (13, 8));
        assert_eq!(delta_leaders_formula(3, 4), Err(FormulaError::UnsupportedM { m: 4 }));
        assert_eq!(delta1(3, 4).unwrap(), 41);
    }

    #[test]
    fn phi_leaders() {
        let p = phi_leaders_formula(3, 2).unwrap();
        assert_eq!((p.phi1, p.phi2, p.phi3), (5, 1, None));
        assert_eq!(phi3(3, 2), Err(FormulaError::Phi3Unavailable));
        let p = phi_leaders_formula(3, 3).unwrap();
        assert_eq!((p.phi1, p.phi2, p.phi3), (7, 5, Some(1)));
        let p = phi_leaders_formula(7, 2).unwrap();
        assert_eq!((p.phi1, p.phi2, p.phi3), (25, 17, Some(11)));
        assert_eq!(phi_leaders_formula(5, 2), Err(FormulaError::UnsupportedQ { q: 5 }));
    }

    #[test]
    fn rational_helpers() {
        assert_eq!(rat(8, 2).below(), 3);
        assert_eq!(rat(-1, 4).below(), -1);
        assert_eq!(rat(7, 2).exact(), Err(FormulaError::NonIntegral { num: 7, den: 2 }));
    }

    #[test]
    fn case_ids() {
        let c = FormulaCase { table: "t", row: 2, ell0: Some(1), ell1: Some(0), ell: None };
        assert_eq!(c.id(), "t/2(l0=1,l1=0)");
    }
}
