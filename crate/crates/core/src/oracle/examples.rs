//! Worked examples from the literature on these two families, pinned as
//! fixtures: dual-distance bounds with true distances, and dually-BCH ranges.

use serde::Serialize;

use super::{audit_bound, code_distance, DistanceOptions, DualSweep, DuallyOracle};
use crate::closed_forms::{delta_leaders_formula, dual_bound, dually_bch_even_like, dually_bch_negacyclic, phi_leaders_formula};
use crate::code::{bch_bound, dual_of, is_lcd, realize, CodeSpec, SplittingField};
use crate::cyclotomic::{Family, LeaderTable, Parity};
use crate::error::OracleError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Claim {
    /// `(delta, bound on d(C⊥), true d(C⊥))` for narrow-sense codes.
    Bounds(&'static [(u64, u64, u64)]),
    /// Dually-BCH exactly on the union of half-open `delta` ranges, checked
    /// over `[lo, hi)`.
    Dually { even_like: bool, lo: u64, hi: u64, truth: &'static [(u64, u64)] },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Example {
    pub id: &'static str,
    pub q: u64,
    pub m: u32,
    pub family: Family,
    pub claim: Claim,
}

use Family::{Cyclic, Negacyclic};

pub const EXAMPLES: &[Example] = &[
    Example { id: "cyclic-q3-m2", q: 3, m: 2, family: Cyclic, claim: Claim::Bounds(&[(2, 4, 4), (3, 2, 2)]) },
    Example { id: "cyclic-q5-m2", q: 5, m: 2, family: Cyclic, claim: Claim::Bounds(&[(2, 16, 16), (8, 4, 4)]) },
    Example {
        id: "cyclic-q5-m2-dually",
        q: 5,
        m: 2,
        family: Cyclic,
        claim: Claim::Dually { even_like: true, lo: 2, hi: 14, truth: &[(2, 3), (8, 14)] },
    },
    Example {
        id: "cyclic-q3-m3-dually",
        q: 3,
        m: 3,
        family: Cyclic,
        claim: Claim::Dually { even_like: true, lo: 2, hi: 15, truth: &[(8, 15)] },
    },
    Example { id: "negacyclic-q3-m3", q: 3, m: 3, family: Negacyclic, claim: Claim::Bounds(&[(2, 5, 6), (4, 2, 2)]) },
    Example {
        id: "negacyclic-q3-m3-dually",
        q: 3,
        m: 3,
        family: Negacyclic,
        claim: Claim::Dually { even_like: false, lo: 2, hi: 5, truth: &[(2, 5)] },
    },
    Example {
        id: "negacyclic-q3-m5-dually",
        q: 3,
        m: 5,
        family: Negacyclic,
        claim: Claim::Dually { even_like: false, lo: 2, hi: 32, truth: &[(2, 4), (25, 32)] },
    },
    Example { id: "negacyclic-q3-m4", q: 3, m: 4, family: Negacyclic, claim: Claim::Bounds(&[(2, 22, 23), (7, 4, 5)]) },
    Example {
        id: "negacyclic-q3-m4-dually",
        q: 3,
        m: 4,
        family: Negacyclic,
        claim: Claim::Dually { even_like: false, lo: 2, hi: 22, truth: &[(7, 22)] },
    },
    Example { id: "negacyclic-q7-m3", q: 7, m: 3, family: Negacyclic, claim: Claim::Bounds(&[(2, 123, 138)]) },
    Example {
        id: "negacyclic-q7-m3-dually",
        q: 7,
        m: 3,
        family: Negacyclic,
        claim: Claim::Dually { even_like: false, lo: 2, hi: 66, truth: &[(63, 66)] },
    },
    Example { id: "negacyclic-q7-m2", q: 7, m: 2, family: Negacyclic, claim: Claim::Bounds(&[(2, 18, 19), (6, 4, 6)]) },
    Example {
        id: "negacyclic-q7-m2-dually",
        q: 7,
        m: 2,
        family: Negacyclic,
        claim: Claim::Dually { even_like: false, lo: 2, hi: 14, truth: &[(2, 3), (10, 14)] },
    },
    Example {
        id: "negacyclic-q7-m4-dually",
        q: 7,
        m: 4,
        family: Negacyclic,
        claim: Claim::Dually { even_like: false, lo: 2, hi: 602, truth: &[(430, 602)] },
    },
];

pub fn find(id: &str) -> Result<&'static Example, OracleError> {
    EXAMPLES.iter().find(|e| e.id == id).ok_or_else(|| OracleError::UnknownExample(id.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimCheck {
    pub what: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExampleReport {
    pub id: &'static str,
    pub q: u64,
    pub m: u32,
    pub family: Family,
    pub checks: Vec<ClaimCheck>,
    pub pass: bool,
}

struct Checks(Vec<ClaimCheck>);

impl Checks {
    fn eq(&mut self, what: String, expected: impl ToString, computed: impl ToString) {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        let pass = expected == computed;
        self.0.push(ClaimCheck { what, expected, computed, pass });
    }

    fn holds(&mut self, what: String, detail: String, pass: bool) {
        self.0.push(ClaimCheck { what, expected: "true".into(), computed: detail, pass });
    }
}

/// `[a, b) ∪ ...` for the maximal true runs of `flags`, offset by `lo`.
pub fn ranges(lo: u64, flags: &[bool]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < flags.len() {
        if flags[i] {
            let s = i;
            while i < flags.len() && flags[i] {
                i += 1;
            }
            parts.push(format!("[{}, {})", lo + s as u64, lo + i as u64));
        } else {
            i += 1;
        }
    }
    if parts.is_empty() {
        "{}".into()
    } else {
        parts.join(" ∪ ")
    }
}

fn truth_string(truth: &[(u64, u64)]) -> String {
    let parts: Vec<String> = truth.iter().map(|(a, b)| format!("[{a}, {b})")).collect();
    if parts.is_empty() {
        "{}".into()
    } else {
        parts.join(" ∪ ")
    }
}

fn leader_checks(ex: &Example, c: &mut Checks) -> Result<(), OracleError> {
    match ex.family {
        Cyclic => {
            let table = LeaderTable::build(ex.q, ex.family.length(ex.q, ex.m)?)?;
            let (d1, d2) = delta_leaders_formula(ex.q, ex.m)?;
            let swept = (table.kth_largest(1, Parity::All)?, table.kth_largest(2, Parity::All)?);
            c.eq("leaders delta1, delta2".into(), format!("{}, {}", swept.0, swept.1), format!("{d1}, {d2}"));
        }
        Negacyclic => {
            let table = LeaderTable::build(ex.q, 2 * ex.family.length(ex.q, ex.m)?)?;
            let p = phi_leaders_formula(ex.q, ex.m)?;
            let (s1, s2) = (table.kth_largest(1, Parity::Odd)?, table.kth_largest(2, Parity::Odd)?);
            c.eq("leaders phi1, phi2".into(), format!("{s1}, {s2}"), format!("{}, {}", p.phi1, p.phi2));
        }
    }
    Ok(())
}

fn bound_checks(ex: &Example, items: &[(u64, u64, u64)], opts: &DistanceOptions, c: &mut Checks) -> Result<(), OracleError> {
    let sf = SplittingField::new(ex.q, ex.m, ex.family)?;
    for &(delta, bound, distance) in items {
        let spec = CodeSpec::narrow(ex.q, ex.m, ex.family, delta)?;
        let report = dual_bound(ex.q, ex.m, ex.family, delta)?;
        c.eq(format!("delta={delta} bound"), bound, report.lower_bound);
        let audit = audit_bound(ex.q, ex.m, ex.family, delta)?;
        c.holds(
            format!("delta={delta} gaps match the oracle scan"),
            format!("{} (oracle gaps {:?}/{:?})", audit.agree, audit.oracle_gaps.low, audit.oracle_gaps.high),
            audit.agree,
        );
        let code = realize(&spec, &sf)?;
        let dual = dual_of(&code, &sf)?;
        let res = code_distance(&dual, &code, &sf.base, opts)?;
        c.eq(format!("delta={delta} true distance"), distance, res.distance);
        let bch = bch_bound(&dual.defining_set)?;
        c.holds(
            format!("delta={delta} bounds <= true distance"),
            format!("formula {} and BCH {bch} vs {}", report.lower_bound, res.distance),
            report.lower_bound <= res.distance as i128 && bch <= res.distance as u64,
        );
        let lcd = is_lcd(&spec, &sf)?;
        c.eq(format!("delta={delta} LCD"), true, lcd);
    }
    Ok(())
}

fn dually_checks(ex: &Example, even_like: bool, lo: u64, hi: u64, truth: &[(u64, u64)], c: &mut Checks) -> Result<(), OracleError> {
    let mut sweep = if even_like {
        DualSweep::even_like(ex.q, ex.m, lo)?
    } else {
        DualSweep::new(ex.q, ex.m, ex.family, 1, lo)?
    };
    let mut oracle = DuallyOracle::for_set(sweep.tperp())?;
    let (mut by_formula, mut by_oracle) = (Vec::new(), Vec::new());
    let mut witnesses_ok = true;
    for delta in lo..hi {
        let f = if even_like {
            dually_bch_even_like(ex.q, ex.m, delta)?
        } else {
            dually_bch_negacyclic(ex.q, ex.m, delta)?
        };
        let v = oracle.verdict(sweep.tperp());
        if let Some(w) = v.witness_run {
            witnesses_ok &= super::witness_set(sweep.tperp(), w) == *sweep.tperp();
        }
        by_formula.push(f);
        by_oracle.push(v.is_dually);
        if delta + 1 < hi {
            sweep.advance();
        }
    }
    let expected = truth_string(truth);
    c.eq(format!("dually range over [{lo}, {hi}) by formula"), &expected, ranges(lo, &by_formula));
    c.eq(format!("dually range over [{lo}, {hi}) by oracle"), &expected, ranges(lo, &by_oracle));
    c.holds("witness runs rebuild T⊥".into(), witnesses_ok.to_string(), witnesses_ok);
    Ok(())
}

pub fn verify_example(id: &str, opts: &DistanceOptions) -> Result<ExampleReport, OracleError> {
    let ex = find(id)?;
    let mut c = Checks(Vec::new());
    leader_checks(ex, &mut c)?;
    match ex.claim {
        Claim::Bounds(items) => bound_checks(ex, items, opts, &mut c)?,
        Claim::Dually { even_like, lo, hi, truth } => dually_checks(ex, even_like, lo, hi, truth, &mut c)?,
    }
    let pass = c.0.iter().all(|x| x.pass);
    Ok(ExampleReport { id: ex.id, q: ex.q, m: ex.m, family: ex.family, checks: c.0, pass })
}

pub fn verify_all(opts: &DistanceOptions) -> Result<Vec<ExampleReport>, OracleError> {
    EXAMPLES.iter().map(|e| verify_example(e.id, opts)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_strings() {
        assert_eq!(ranges(2, &[true, false, false, true, true]), "[2, 3) ∪ [5, 7)");
        assert_eq!(ranges(2, &[false]), "{}");
        assert_eq!(truth_string(&[(2, 3), (8, 14)]), "[2, 3) ∪ [8, 14)");
    }

    #[test]
    fn unknown_id() {
        assert!(matches!(find("nope"), Err(OracleError::UnknownExample(_))));
        assert_eq!(EXAMPLES.len(), 14);
    }

    #[test]
    fn small_examples_pass() {
        let opts = DistanceOptions { workers: 1, ..DistanceOptions::default() };
        for id in ["cyclic-q3-m2", "negacyclic-q3-m3", "negacyclic-q3-m3-dually", "cyclic-q5-m2-dually"] {
            let r = verify_example(id, &opts).unwrap();
            assert!(r.pass, "{id}: {:?}", r.checks);
        }
    }
}
