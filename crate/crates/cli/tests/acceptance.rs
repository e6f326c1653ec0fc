//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test -p bchlab-cli --test acceptance`. A criterion listed
//! in `KNOWN_RED` still prints FAIL; it only fails the process if it starts
//! passing (so the list cannot go stale) or if any other criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use bchlab_core::closed_forms::{dual_bound, dually_bch_even_like, dually_bch_negacyclic};
use bchlab_core::code::{bch_bound, dual_of, realize};
use bchlab_core::cyclotomic::ord_mod;
use bchlab_core::oracle::grid::{sweep_point, Check, GridRow, Status};
use bchlab_core::oracle::{anchor_leader, audit_bound, code_distance, distance_at_least, DistanceOptions, DualSweep, DuallyOracle};
use bchlab_core::{CodeSpec, Family, SplittingField};

use Family::{Cyclic, Negacyclic};

// ---- pinned limits -------------------------------------------------------

/// Wall-clock limit for the (5,2) cyclic distances (criterion 1).
const LIMIT_Q5: Duration = Duration::from_secs(5);
/// Wall-clock limit for the (7,3) negacyclic distance (criterion 3).
const LIMIT_Q7M3: Duration = Duration::from_secs(30);
/// Extension degree cap for structural checks (criterion 6).
const MAX_EXT_DEGREE: u64 = 24;
/// Largest length realized in criterion 6.
const MAX_REALIZED_LENGTH: u64 = 200;
/// Criterion 6 enumerates a code when q^k is at most this.
const ENUMERATION_CAP: u128 = 2_000_000;
/// Criterion 6 searches supports below the BCH bound when the estimated
/// node count is at most this.
const SEARCH_COST_CAP: f64 = 2e6;

/// Criteria expected to fail, with the reason printed alongside.
const KNOWN_RED: &[(u32, &str)] = &[(
    3,
    "(3,4) delta=2: stated bound 22 and true distance 23; the longest run in T⊥ gives 14 \
     and exhaustive enumeration of the [41,8] dual gives 22",
)];

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(failures: &[String], ok: String) -> Verdict {
    if failures.is_empty() {
        Verdict { pass: true, detail: ok }
    } else {
        Verdict { pass: false, detail: failures.join("; ") }
    }
}

fn serial() -> DistanceOptions {
    DistanceOptions { workers: 1, ..DistanceOptions::default() }
}

/// Exact `d(C⊥)` for the narrow-sense code.
fn dual_distance(q: u64, m: u32, family: Family, delta: u64) -> Result<usize, String> {
    let sf = SplittingField::new(q, m, family).map_err(|e| e.to_string())?;
    let spec = CodeSpec::narrow(q, m, family, delta).map_err(|e| e.to_string())?;
    let code = realize(&spec, &sf).map_err(|e| e.to_string())?;
    let dual = dual_of(&code, &sf).map_err(|e| e.to_string())?;
    code_distance(&dual, &code, &sf.base, &serial()).map(|r| r.distance).map_err(|e| e.to_string())
}

/// `(delta, bound, true distance)` against formula, audit and enumeration.
fn check_bounds(q: u64, m: u32, family: Family, cases: &[(u64, u64, usize)], fails: &mut Vec<String>) -> Duration {
    let start = Instant::now();
    for &(delta, bound, dist) in cases {
        let tag = format!("({q},{m}) delta={delta}");
        match dual_bound(q, m, family, delta) {
            Ok(r) if r.lower_bound == bound as i128 => {}
            Ok(r) => fails.push(format!("{tag}: bound {} != {bound}", r.lower_bound)),
            Err(e) => fails.push(format!("{tag}: {e}")),
        }
        match audit_bound(q, m, family, delta) {
            Ok(a) if a.agree => {}
            Ok(a) => fails.push(format!("{tag}: audit disagrees (BCH bound of T⊥ {})", a.dual_bch_bound)),
            Err(e) => fails.push(format!("{tag}: {e}")),
        }
        match dual_distance(q, m, family, delta) {
            Ok(d) if d == dist => {}
            Ok(d) => fails.push(format!("{tag}: true distance {d} != {dist}")),
            Err(e) => fails.push(format!("{tag}: {e}")),
        }
    }
    start.elapsed()
}

// ---- 1 -------------------------------------------------------------------

fn cyclic_bounds() -> Verdict {
    let mut fails = Vec::new();
    check_bounds(3, 2, Cyclic, &[(2, 4, 4), (3, 2, 2)], &mut fails);
    let t = check_bounds(5, 2, Cyclic, &[(2, 16, 16), (8, 4, 4)], &mut fails);
    if t > LIMIT_Q5 {
        fails.push(format!("(5,2) took {t:.2?} > {LIMIT_Q5:?}"));
    }
    verdict(&fails, format!("(3,2) 4,2 / (5,2) 16,4; bounds and distances exact, (5,2) in {t:.2?}"))
}

// ---- 2, 4 ----------------------------------------------------------------

/// Formula and oracle per delta in `[lo, hi)`, both against `truth`.
fn check_dually(q: u64, m: u32, family: Family, even_like: bool, (lo, hi): (u64, u64), truth: &[(u64, u64)], fails: &mut Vec<String>) {
    let expect = |d: u64| truth.iter().any(|&(a, b)| a <= d && d < b);
    let make = |d| if even_like { DualSweep::even_like(q, m, d) } else { DualSweep::new(q, m, family, 1, d) };
    let mut sweep = match make(lo) {
        Ok(s) => s,
        Err(e) => return fails.push(format!("({q},{m}): {e}")),
    };
    let mut oracle = DuallyOracle::for_set(sweep.tperp()).expect("oracle");
    for d in lo..hi {
        let formula = if even_like { dually_bch_even_like(q, m, d) } else { dually_bch_negacyclic(q, m, d) };
        let verdict = oracle.verdict(sweep.tperp());
        match formula {
            Ok(f) if f == expect(d) && verdict.is_dually == f => {}
            Ok(f) => fails.push(format!("({q},{m}) delta={d}: formula {f}, oracle {}, expected {}", verdict.is_dually, expect(d))),
            Err(e) => fails.push(format!("({q},{m}) delta={d}: {e}")),
        }
        if d + 1 < hi {
            sweep.advance();
        }
    }
}

fn cyclic_dually() -> Verdict {
    let mut fails = Vec::new();
    check_dually(5, 2, Cyclic, true, (2, 14), &[(2, 3), (8, 14)], &mut fails);
    check_dually(3, 3, Cyclic, true, (2, 15), &[(8, 15)], &mut fails);
    verdict(&fails, "(5,2) {2} ∪ [8,13], (3,3) [8,14]; formula = oracle = stated for every delta".into())
}

fn negacyclic_dually() -> Verdict {
    let mut fails = Vec::new();
    check_dually(3, 3, Negacyclic, false, (2, 5), &[(2, 5)], &mut fails);
    check_dually(3, 5, Negacyclic, false, (2, 32), &[(2, 4), (25, 32)], &mut fails);
    check_dually(7, 2, Negacyclic, false, (2, 14), &[(2, 3), (10, 14)], &mut fails);
    check_dually(7, 3, Negacyclic, false, (2, 66), &[(63, 66)], &mut fails);
    // full range instead of the spot checks
    let start = Instant::now();
    check_dually(7, 4, Negacyclic, false, (2, 602), &[(430, 602)], &mut fails);
    let t = start.elapsed();
    verdict(&fails, format!("(3,3) (3,5) (7,2) (7,3) exact; (7,4) all 600 delta in [2,602) exact in {t:.2?}"))
}

// ---- 3 -------------------------------------------------------------------

fn negacyclic_bounds() -> Verdict {
    let mut fails = Vec::new();
    check_bounds(3, 3, Negacyclic, &[(2, 5, 6), (4, 2, 2)], &mut fails);
    check_bounds(3, 4, Negacyclic, &[(2, 22, 23), (7, 4, 5)], &mut fails);
    check_bounds(7, 2, Negacyclic, &[(2, 18, 19), (6, 4, 6)], &mut fails);
    let t = check_bounds(7, 3, Negacyclic, &[(2, 123, 138)], &mut fails);
    if t > LIMIT_Q7M3 {
        fails.push(format!("(7,3) took {t:.2?} > {LIMIT_Q7M3:?}"));
    }
    verdict(&fails, format!("(3,3) (3,4) (7,2) (7,3) bounds and distances exact, (7,3) in {t:.2?}"))
}

// ---- 5 -------------------------------------------------------------------

/// A row no closed form covers is acceptable only in the residual range of
/// the q = 3, m even gap table: delta above (3^{m-1} + 1) / 4.
fn residual(row: &GridRow) -> bool {
    let limit = (3u64.pow(row.m - 1) + 1) / 4;
    row.q == 3
        && row.m % 2 == 0
        && row.family == Negacyclic
        && matches!(row.check, Check::NegLow | Check::NegHigh)
        && row.delta.is_some_and(|d| d > limit)
}

fn grid() -> Verdict {
    let start = Instant::now();
    let (mut rows, mut agree, mut corrected) = (0usize, 0usize, 0usize);
    let mut residual_rows = 0usize;
    let mut fails = Vec::new();
    for family in [Cyclic, Negacyclic] {
        for q in [3, 5, 7, 9, 11] {
            for m in 2..=5 {
                let res = sweep_point(q, m, family, &mut |row| {
                    rows += 1;
                    if row.case.as_deref().is_some_and(|c| c.starts_with("neg-odd-low/8")) {
                        corrected += 1;
                    }
                    match row.status {
                        Status::Agree => agree += 1,
                        Status::Uncovered if residual(&row) => residual_rows += 1,
                        _ => fails.push(format!(
                            "{} q={} m={} {} delta={}: formula {} oracle {}",
                            row.family,
                            row.q,
                            row.m,
                            row.check.as_str(),
                            row.delta.map_or("-".into(), |d| d.to_string()),
                            row.formula.as_deref().unwrap_or("none"),
                            row.oracle
                        )),
                    }
                });
                if let Err(e) = res {
                    fails.push(format!("{family} q={q} m={m}: {e}"));
                }
            }
        }
    }
    let t = start.elapsed();
    if fails.len() > 5 {
        let n = fails.len();
        fails.truncate(5);
        fails.push(format!("... {n} discrepancies"));
    }
    verdict(
        &fails,
        format!(
            "{rows} cells, {agree} agree, 0 mismatch; {residual_rows} residual (3,4) gap cells have no table row \
             and are oracle-only; {corrected} cells use the corrected neg-odd-low row 8; {t:.2?}"
        ),
    )
}

// ---- 6 -------------------------------------------------------------------

struct Tally {
    instances: usize,
    exact: usize,
    certified: usize,
    out_of_reach: usize,
}

/// Rough node count of an anchored support search up to weight `w - 1`.
fn search_cost(n: u64, w: u64) -> f64 {
    if w < 3 {
        return n as f64;
    }
    // C(n - 1, w - 2)
    (0..w - 2).fold(1.0, |acc, i| acc * (n - 1 - i) as f64 / (i + 1) as f64)
}

fn check_instance(q: u64, m: u32, family: Family, delta: u64, sf: &SplittingField, t: &mut Tally, fails: &mut Vec<String>) {
    let tag = format!("{family} ({q},{m}) delta={delta}");
    let spec = CodeSpec::narrow(q, m, family, delta).expect("spec");
    let (code, dual) = match realize(&spec, sf).and_then(|c| dual_of(&c, sf).map(|d| (c, d))) {
        Ok(p) => p,
        Err(e) => return fails.push(format!("{tag}: {e}")),
    };
    t.instances += 1;
    let n = code.length();
    let f = &sf.base;
    if code.generator.degree() != Some(code.defining_set.len()) || code.dimension() + code.defining_set.len() != n {
        fails.push(format!("{tag}: deg g + k != n"));
    }
    if !code.generator.divides(f, &sf.binomial()).unwrap_or(false) {
        fails.push(format!("{tag}: g does not divide x^n - lambda"));
    }
    if !code.generator_matrix().mul_transpose(f, &dual.generator_matrix()).is_zero() {
        fails.push(format!("{tag}: G G⊥^T != 0"));
    }
    if code.generator_matrix().vstack(&dual.generator_matrix()).rank(f) != n {
        fails.push(format!("{tag}: not LCD"));
    }
    let opts = DistanceOptions { max_codewords: ENUMERATION_CAP, ..serial() };
    for (c, partner) in [(&code, &dual), (&dual, &code)] {
        let bound = bch_bound(&c.defining_set).expect("nonempty");
        let words = (q as f64).powi(c.dimension() as i32);
        let route = if words <= ENUMERATION_CAP as f64 {
            &mut t.exact
        } else if search_cost(n as u64, bound) <= SEARCH_COST_CAP {
            &mut t.certified
        } else {
            t.out_of_reach += 1;
            continue;
        };
        match distance_at_least(c, partner, f, bound as usize, &opts) {
            Ok(true) => *route += 1,
            Ok(false) => fails.push(format!("{tag}: a word of weight below the BCH bound {bound}")),
            Err(e) => fails.push(format!("{tag}: {e}")),
        }
    }
}

fn structural() -> Verdict {
    let mut fails = Vec::new();
    let mut tally = Tally { instances: 0, exact: 0, certified: 0, out_of_reach: 0 };
    for family in [Cyclic, Negacyclic] {
        for q in [3, 5, 7, 9, 11] {
            for m in 2..=5 {
                let Ok(n) = family.length(q, m) else { continue };
                if family == Negacyclic && q % 4 != 3 {
                    continue;
                }
                let ext = ord_mod(q, n * family.r()).expect("coprime");
                if n > MAX_REALIZED_LENGTH || ext > MAX_EXT_DEGREE {
                    continue;
                }
                let sf = SplittingField::new(q, m, family).expect("splitting field");
                // every narrow-sense delta up to the largest leader
                let top = anchor_leader(q, m, family).expect("anchor");
                let last = match family {
                    Cyclic => top,
                    Negacyclic => top.div_ceil(2),
                };
                for delta in 2..=last {
                    check_instance(q, m, family, delta, &sf, &mut tally, &mut fails);
                }
            }
        }
    }
    fails.truncate(5);
    verdict(
        &fails,
        format!(
            "{} instances (n <= {MAX_REALIZED_LENGTH}, l <= {MAX_EXT_DEGREE}): deg g + k = n, g | x^n - lambda, \
             G G⊥^T = 0, LCD by rank on all; BCH bound <= d on {} sides by enumeration and {} by exhaustive \
             search below the bound; {} sides with q^k > {ENUMERATION_CAP} and search cost > {SEARCH_COST_CAP:e} not checked",
            tally.instances, tally.exact, tally.certified, tally.out_of_reach
        ),
    )
}

// ---- 7 -------------------------------------------------------------------

fn run_verify(workers: &str) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_bchlab"))
        .args(["verify", "--all", "--workers", workers])
        .output()
        .map_err(|e| e.to_string())?;
    if out.stdout.is_empty() {
        return Err(format!("no output (status {})", out.status));
    }
    Ok(out.stdout)
}

fn determinism() -> Verdict {
    let runs: Result<Vec<_>, _> = ["1", "1", "3"].iter().map(|w| run_verify(w)).collect();
    match runs {
        Err(e) => Verdict { pass: false, detail: e },
        Ok(r) if r[0] == r[1] && r[1] == r[2] => {
            Verdict { pass: true, detail: format!("verify --all: 3 runs (workers 1, 1, 3), {} identical bytes", r[0].len()) }
        }
        Ok(_) => Verdict { pass: false, detail: "verify --all output differs between runs".into() },
    }
}

fn main() {
    let criteria: [(u32, &str, fn() -> Verdict); 7] = [
        (1, "cyclic bound examples", cyclic_bounds),
        (2, "cyclic dually-BCH ranges", cyclic_dually),
        (3, "negacyclic bound examples", negacyclic_bounds),
        (4, "negacyclic dually-BCH ranges", negacyclic_dually),
        (5, "formula-vs-oracle grid", grid),
        (6, "structural invariants", structural),
        (7, "determinism", determinism),
    ];
    // `cargo test --test acceptance -- 3 5` runs a subset
    let only: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut unexpected = Vec::new();
    let mut passed = 0;
    for (id, name, run) in criteria {
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let v = run();
        let v = Verdict { detail: format!("{} [{:.1?}]", v.detail, start.elapsed()), ..v };
        let known = KNOWN_RED.iter().find(|(k, _)| *k == id);
        println!("{} [{id}] {name}: {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
        match (v.pass, known) {
            (true, None) => passed += 1,
            (true, Some(_)) => unexpected.push(format!("criterion {id} passes but is listed as known red")),
            (false, Some((_, why))) => println!("      known red: {why}"),
            (false, None) => unexpected.push(format!("criterion {id} failed")),
        }
    }
    println!("{passed} pass, {} unexpected", unexpected.len());
    if !unexpected.is_empty() {
        for u in &unexpected {
            eprintln!("{u}");
        }
        std::process::exit(1);
    }
}
