use std::io::Write;

use serde_json::{json, Value};

use bchlab_core::closed_forms::{
    delta1, delta2, dually_bch_even_like, dually_bch_negacyclic, phi_leaders_formula,
};
use bchlab_core::code::{bch_bound, dual_of, is_lcd, realize};
use bchlab_core::cyclotomic::{coset, dual_defining_set, ord_mod};
use bchlab_core::error::{CodeError, FormulaError};
use bchlab_core::oracle::examples::{self, ranges, ExampleReport, EXAMPLES};
use bchlab_core::oracle::grid::{sweep_point, GridRow, GridSummary};
use bchlab_core::oracle::{audit_bound, code_distance, DistanceOptions, DualSweep, DuallyOracle};
use bchlab_core::{CodeSpec, Family, LeaderTable, Parity, PrimePower, SplittingField};

use crate::report::{cell, json as write_json, opt_s, s, Report};
use crate::{Command, Format, SweepFamily, UsageError};

/// Above this length `code-info` decides LCD from the defining set alone.
const RANK_CHECK_MAX_LENGTH: u64 = 1024;

pub enum Outcome {
    Done,
    /// Output was written but some claim did not hold.
    Failed(String),
}

fn lib<T, E: Into<bchlab_core::Error>>(r: Result<T, E>) -> anyhow::Result<T> {
    r.map_err(|e| anyhow::Error::new(e.into()))
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(UsageError(msg.into()))
}

pub fn run(cmd: &Command, format: Option<Format>, opts: &DistanceOptions, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    let fmt = format.unwrap_or(Format::Json);
    let (report, outcome) = match cmd {
        Command::Cosets { q, n, odd } => (cosets(*q, *n, *odd)?, Outcome::Done),
        Command::Leaders { q, m, odd, k } => (leaders(*q, *m, *odd, *k)?, Outcome::Done),
        Command::CodeInfo { q, m, family, delta, b, distance } => {
            (code_info(*q, *m, (*family).into(), *delta, b.unwrap_or(1), *distance, opts)?, Outcome::Done)
        }
        Command::Bound { q, m, family, delta } => (bound(*q, *m, (*family).into(), *delta)?, Outcome::Done),
        Command::Dually { q, m, family, delta_range, even_like } => {
            (dually(*q, *m, (*family).into(), *delta_range, *even_like)?, Outcome::Done)
        }
        Command::Verify { list: true, .. } => (list_examples(), Outcome::Done),
        Command::Verify { id, .. } => verify(id.as_deref(), opts)?,
        Command::Sweep { qs, ms, family } => {
            return sweep(&qs.0, &ms.0, *family, format.unwrap_or(Format::Csv), out);
        }
    };
    report.write(fmt, out)?;
    Ok(outcome)
}

fn parity(odd: bool) -> Parity {
    if odd {
        Parity::Odd
    } else {
        Parity::All
    }
}

fn cosets(q: u64, n: u64, odd: bool) -> anyhow::Result<Report> {
    let table = lib(LeaderTable::build(q, n))?;
    let leaders = table.leaders(parity(odd));
    let mut r = Report::new("cosets");
    r.header = vec!["leader", "size", "elements"];
    let mut list = Vec::with_capacity(leaders.len());
    for &l in &leaders {
        let c = lib(coset(q, n, l))?;
        let elems: Vec<String> = c.elements.iter().map(|x| x.to_string()).collect();
        r.line(format!("C_{l} = {{{}}}", elems.join(", ")));
        r.rows.push(vec![l.to_string(), c.elements.len().to_string(), elems.join(" ")]);
        list.push(json!({ "leader": s(l), "size": c.elements.len(), "elements": elems }));
    }
    r.line(format!("{} cosets", leaders.len()));
    r.set("q", s(q));
    r.set("modulus", s(n));
    r.set("parity", if odd { "odd" } else { "all" });
    r.set("count", leaders.len());
    r.set("leaders", leaders.iter().map(s).collect::<Vec<_>>());
    r.set("cosets", list);
    Ok(r)
}

fn leaders(q: u64, m: u32, odd: bool, k: usize) -> anyhow::Result<Report> {
    if k == 0 {
        return Err(usage("--k must be at least 1"));
    }
    let modulus = lib(Family::Cyclic.length(q, m))?;
    let table = lib(LeaderTable::build(q, modulus))?;
    // formulas exist for the top two (all) or top three (odd) leaders
    let formula = |rank: usize| -> Option<Result<i128, FormulaError>> {
        if odd {
            let phi = phi_leaders_formula(q, m);
            match rank {
                1 => Some(phi.map(|p| p.phi1)),
                2 => Some(phi.map(|p| p.phi2)),
                3 => Some(phi.and_then(|p| p.phi3.ok_or(FormulaError::Phi3Unavailable))),
                _ => None,
            }
        } else {
            match rank {
                1 => Some(delta1(q, m)),
                2 => Some(delta2(q, m)),
                _ => None,
            }
        }
    };

    let mut r = Report::new("leaders");
    r.header = vec!["rank", "sweep", "formula", "agree"];
    let mut list = Vec::new();
    for rank in 1..=k {
        let Ok(sweep) = table.kth_largest(rank, parity(odd)) else {
            break;
        };
        let (f, err) = match formula(rank) {
            Some(Ok(v)) => (Some(v), None),
            Some(Err(e)) => (None, Some(e.to_string())),
            None => (None, None),
        };
        let agree = f.map(|v| v == sweep as i128);
        r.rows.push(vec![rank.to_string(), sweep.to_string(), cell(f), cell(agree)]);
        r.line(match (f, &err) {
            (Some(v), _) => format!("#{rank}: sweep {sweep}, formula {v}{}", if agree == Some(true) { "" } else { "  MISMATCH" }),
            (None, Some(e)) => format!("#{rank}: sweep {sweep}, formula n/a ({e})"),
            (None, None) => format!("#{rank}: sweep {sweep}"),
        });
        let mut row = json!({ "rank": rank, "sweep": s(sweep), "formula": opt_s(f), "agree": agree });
        if let Some(e) = err {
            row["formula_error"] = Value::from(e);
        }
        list.push(row);
    }
    r.set("q", s(q));
    r.set("m", m);
    r.set("modulus", s(modulus));
    r.set("parity", if odd { "odd" } else { "all" });
    r.set("leaders", list);
    Ok(r)
}

fn code_info(q: u64, m: u32, family: Family, delta: u64, b: u64, distance: bool, opts: &DistanceOptions) -> anyhow::Result<Report> {
    let spec = lib(CodeSpec::new(q, m, family, delta, b))?;
    let t = lib(spec.defining_set())?;
    let tperp = lib(dual_defining_set(&t))?;
    let n = spec.n();
    let ext = lib(ord_mod(q, spec.modulus()))?;
    let bch = lib(bch_bound(&t))?;
    let dual_bch = if tperp.is_empty() { None } else { Some(lib(bch_bound(&tperp))?) };

    let mut r = Report::new("code-info");
    r.set("q", s(q));
    r.set("m", m);
    r.set("family", family.as_str());
    r.set("n", s(n));
    r.set("delta", s(delta));
    r.set("b", s(b));
    r.set("modulus", s(spec.modulus()));
    r.set("extension_degree", s(ext));
    r.set("defining_set_size", s(t.len()));
    r.set("cosets", t.coset_count());
    r.set("dimension", s(n - t.len() as u64));
    r.set("bch_bound", s(bch));
    r.set("dual", json!({ "dimension": s(t.len()), "bch_bound": opt_s(dual_bch) }));

    let mut generator = Value::Null;
    let mut lcd = (t.is_symmetric(), "defining-set");
    let mut dist = Value::Null;
    match SplittingField::new(q, m, family) {
        Ok(sf) => {
            let code = lib(realize(&spec, &sf))?;
            let g = &code.generator;
            generator = json!({ "degree": g.degree(), "coeffs": g.coeffs() });
            if n <= RANK_CHECK_MAX_LENGTH {
                lcd = (lib(is_lcd(&spec, &sf))?, "rank");
            }
            if distance {
                let dual = lib(dual_of(&code, &sf))?;
                let dc = lib(code_distance(&code, &dual, &sf.base, opts))?;
                let dd = lib(code_distance(&dual, &code, &sf.base, opts))?;
                dist = json!({ "code": dc, "dual": dd });
            }
        }
        Err(e @ CodeError::ExtensionTooLarge { .. }) => {
            if distance {
                return Err(lib::<(), _>(Err(e)).unwrap_err());
            }
            r.set("generator_note", e.to_string());
        }
        Err(e) => return lib(Err(e)),
    }
    r.set("generator", generator.clone());
    r.set("is_lcd", lcd.0);
    r.set("lcd_method", lcd.1);
    if distance {
        r.set("distance", dist.clone());
    }

    r.header = vec!["field", "value"];
    let mut kv = vec![
        ("n", n.to_string()),
        ("modulus", spec.modulus().to_string()),
        ("extension_degree", ext.to_string()),
        ("defining_set_size", t.len().to_string()),
        ("dimension", (n - t.len() as u64).to_string()),
        ("bch_bound", bch.to_string()),
        ("dual_dimension", t.len().to_string()),
        ("dual_bch_bound", cell(dual_bch)),
        ("generator_degree", cell(generator.get("degree").and_then(Value::as_u64))),
        ("is_lcd", lcd.0.to_string()),
    ];
    if distance {
        kv.push(("distance", cell(dist["code"]["distance"].as_u64())));
        kv.push(("dual_distance", cell(dist["dual"]["distance"].as_u64())));
    }
    for (k, v) in kv {
        r.line(format!("{k:<18} {v}"));
        r.rows.push(vec![k.to_string(), v]);
    }
    Ok(r)
}

fn bound(q: u64, m: u32, family: Family, delta: u64) -> anyhow::Result<Report> {
    let audit = lib(audit_bound(q, m, family, delta))?;
    let mut r = Report::new("bound");
    r.extend(serde_json::to_value(&audit)?);

    let case = audit.formula.as_ref().map(|f| {
        f.bound_case
            .as_ref()
            .map(|c| c.id())
            .unwrap_or_else(|| f.gaps.iter().map(|g| g.case.id()).collect::<Vec<_>>().join(" "))
    });
    let formula_bound = audit.formula.as_ref().map(|f| f.lower_bound);
    let warnings: Vec<&str> = audit.warnings.iter().map(|w| w.kind).collect();
    r.header = vec![
        "q", "m", "family", "delta", "n", "case", "formula_bound", "oracle_low", "oracle_high", "oracle_run_bound",
        "dual_bch_bound", "agree", "lower_bound", "warnings",
    ];
    r.rows.push(vec![
        q.to_string(),
        m.to_string(),
        family.to_string(),
        delta.to_string(),
        audit.n.to_string(),
        cell(case.clone()),
        cell(formula_bound),
        cell(audit.oracle_gaps.low),
        cell(audit.oracle_gaps.high),
        cell(audit.oracle_run_bound),
        audit.dual_bch_bound.to_string(),
        audit.agree.to_string(),
        audit.lower_bound.to_string(),
        warnings.join(" "),
    ]);
    r.line(format!("{family} q={q} m={m} n={} delta={delta}", audit.n));
    match (&formula_bound, &audit.formula_error) {
        (Some(b), _) => r.line(format!("formula bound   {b} [{}]", case.unwrap_or_default())),
        (None, Some(e)) => r.line(format!("formula bound   n/a ({e})")),
        _ => {}
    }
    r.line(format!(
        "oracle gaps     low {} high {} (anchor {})",
        cell(audit.oracle_gaps.low),
        cell(audit.oracle_gaps.high),
        audit.oracle_gaps.anchor
    ));
    r.line(format!("BCH bound of T⊥ {}", audit.dual_bch_bound));
    r.line(format!("agree           {}", audit.agree));
    r.line(format!("lower bound     {}", audit.lower_bound));
    for w in &audit.warnings {
        r.line(format!("warning [{}]: {}", w.kind, w.message));
    }
    Ok(r)
}

fn dually(q: u64, m: u32, family: Family, (lo, hi): (u64, u64), even_like: bool) -> anyhow::Result<Report> {
    if even_like && family != Family::Cyclic {
        return Err(usage("--even-like applies to cyclic codes only"));
    }
    if lo < 2 {
        return Err(usage("delta range must start at 2 or above"));
    }
    let make = |d| if even_like { DualSweep::even_like(q, m, d) } else { DualSweep::new(q, m, family, 1, d) };
    // rejects an out-of-range upper end before doing any work
    lib(make(hi - 1))?;
    let mut sweep = lib(make(lo))?;
    let mut oracle = lib(DuallyOracle::for_set(sweep.tperp()))?;

    let mut r = Report::new("dually");
    r.header = vec!["delta", "formula", "oracle", "witness_b", "witness_delta", "counterexample", "agree"];
    let mut rows = Vec::new();
    let (mut fflags, mut oflags) = (Vec::new(), Vec::new());
    let mut mismatches = Vec::new();
    for d in lo..hi {
        let v = oracle.verdict(sweep.tperp());
        let formula = match (even_like, family) {
            (true, _) => dually_bch_even_like(q, m, d),
            (false, Family::Negacyclic) => dually_bch_negacyclic(q, m, d),
            (false, Family::Cyclic) => Err(FormulaError::NoCaseMatched { delta: d }),
        };
        let (f, ferr) = match formula {
            Ok(b) => (Some(b), None),
            Err(e) => (None, Some(e.to_string())),
        };
        let agree = f.map(|b| b == v.is_dually);
        if agree == Some(false) {
            mismatches.push(d);
        }
        fflags.push(f);
        oflags.push(v.is_dually);
        let (wb, wd) = (v.witness_run.map(|w| w.b), v.witness_run.map(|w| w.delta));
        r.rows.push(vec![d.to_string(), cell(f), v.is_dually.to_string(), cell(wb), cell(wd), cell(v.counterexample), cell(agree)]);
        let detail = match (v.witness_run, v.counterexample) {
            (Some(w), _) => format!(" (b={}, delta'={})", w.b, w.delta),
            (None, Some(c)) => format!(" (misses coset of {c})"),
            _ => String::new(),
        };
        r.line(format!(
            "delta={d:<6} formula={:<6} oracle={}{detail}{}",
            f.map_or("n/a".to_string(), |b| b.to_string()),
            v.is_dually,
            if agree == Some(false) { "  MISMATCH" } else { "" }
        ));
        let mut row = json!({ "delta": s(d), "formula": f, "oracle": v, "agree": agree });
        if let Some(e) = ferr {
            row["formula_error"] = Value::from(e);
        }
        rows.push(row);
        if d + 1 < hi {
            sweep.advance();
        }
    }
    let formula_range = fflags.iter().all(Option::is_some).then(|| ranges(lo, &fflags.iter().map(|f| f.unwrap_or(false)).collect::<Vec<_>>()));
    let oracle_range = ranges(lo, &oflags);
    r.line(format!("oracle:  dually-BCH for delta in {oracle_range}"));
    if let Some(fr) = &formula_range {
        r.line(format!("formula: dually-BCH for delta in {fr}"));
    }
    r.line(format!("{} mismatches", mismatches.len()));

    r.set("q", s(q));
    r.set("m", m);
    r.set("family", family.as_str());
    r.set("even_like", even_like);
    r.set("delta_range", json!({ "lo": s(lo), "hi": s(hi) }));
    r.set("rows", rows);
    r.set("formula_range", formula_range);
    r.set("oracle_range", oracle_range);
    r.set("mismatches", mismatches.iter().map(s).collect::<Vec<_>>());
    Ok(r)
}

fn list_examples() -> Report {
    let mut r = Report::new("verify");
    r.header = vec!["id", "q", "m", "family"];
    for e in EXAMPLES {
        r.rows.push(vec![e.id.into(), e.q.to_string(), e.m.to_string(), e.family.to_string()]);
        r.line(e.id);
    }
    r.set("examples", EXAMPLES.iter().map(|e| e.id).collect::<Vec<_>>());
    r
}

fn verify(id: Option<&str>, opts: &DistanceOptions) -> anyhow::Result<(Report, Outcome)> {
    let reports: Vec<ExampleReport> = match id {
        Some(id) => vec![lib(examples::verify_example(id, opts))?],
        None => lib(examples::verify_all(opts))?,
    };
    let failed: Vec<&str> = reports.iter().filter(|e| !e.pass).map(|e| e.id).collect();
    let mut r = Report::new("verify");
    r.header = vec!["id", "check", "expected", "computed", "pass"];
    for e in &reports {
        r.line(format!("{} {}", if e.pass { "PASS" } else { "FAIL" }, e.id));
        for c in &e.checks {
            r.rows.push(vec![e.id.into(), c.what.clone(), c.expected.clone(), c.computed.clone(), c.pass.to_string()]);
            if !c.pass {
                r.line(format!("    {}: expected {}, computed {}", c.what, c.expected, c.computed));
            }
        }
    }
    r.line(format!("{} of {} examples pass", reports.len() - failed.len(), reports.len()));
    r.set("passed", reports.len() - failed.len());
    r.set("failed", failed.len());
    r.set("all_pass", failed.is_empty());
    r.set("examples", serde_json::to_value(&reports)?);
    let outcome = if failed.is_empty() {
        Outcome::Done
    } else {
        Outcome::Failed(format!("{} of {} examples failed: {}", failed.len(), reports.len(), failed.join(", ")))
    };
    Ok((r, outcome))
}

fn sweep(qs: &[u64], ms: &[u32], which: SweepFamily, format: Format, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    for &q in qs {
        lib(PrimePower::odd(q))?;
    }
    if let Some(m) = ms.iter().find(|&&m| m < 2) {
        return Err(usage(format!("m must be at least 2, got {m}")));
    }
    let families: &[Family] = match which {
        SweepFamily::Cyclic => &[Family::Cyclic],
        SweepFamily::Negacyclic => &[Family::Negacyclic],
        SweepFamily::Both => &[Family::Cyclic, Family::Negacyclic],
    };
    let points = || families.iter().flat_map(move |&f| qs.iter().flat_map(move |&q| ms.iter().map(move |&m| (q, m, f))));

    if format == Format::Csv {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(GridRow::CSV_HEADER)?;
        for (q, m, f) in points() {
            let mut failure = None;
            lib(sweep_point(q, m, f, &mut |row: GridRow| {
                if failure.is_none() {
                    failure = w.write_record(row.csv_record()).err();
                }
            }))?;
            if let Some(e) = failure {
                return Err(e.into());
            }
        }
        w.flush()?;
        return Ok(Outcome::Done);
    }

    let mut total = GridSummary::default();
    let mut per_point = Vec::new();
    let mut text = String::new();
    for (q, m, f) in points() {
        let mut s = GridSummary::default();
        lib(sweep_point(q, m, f, &mut |row| s.push(row)))?;
        text.push_str(&format!(
            "{f:<10} q={q:<3} m={m}: {:>6} rows, {:>6} agree, {} mismatch, {} uncovered\n",
            s.rows, s.agree, s.mismatch, s.uncovered
        ));
        per_point.push(json!({
            "q": crate::report::s(q), "m": m, "family": f.as_str(),
            "rows": s.rows, "agree": s.agree, "mismatch": s.mismatch, "uncovered": s.uncovered,
        }));
        total.merge(s);
    }
    match format {
        Format::Text => {
            text.push_str(&format!(
                "total: {} rows, {} agree, {} mismatch, {} uncovered\n",
                total.rows, total.agree, total.mismatch, total.uncovered
            ));
            out.write_all(text.as_bytes())?;
        }
        _ => {
            let doc = json!({
                "schema": 1,
                "command": "sweep",
                "points": per_point,
                "totals": { "rows": total.rows, "agree": total.agree, "mismatch": total.mismatch, "uncovered": total.uncovered },
                "discrepancies": total.discrepancies,
            });
            write_json(&doc, out)?;
        }
    }
    Ok(Outcome::Done)
}
