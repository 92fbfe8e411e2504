//! Acceptance suite. Runs each criterion in turn, prints one PASS/FAIL line per
//! criterion with its elapsed time and budget, and exits nonzero if any
//! criterion fails or overruns its budget.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bdes_core::conjectures::{branden_check, conjecture_scan, stembridge_consistent, Property};
use bdes_core::genfun::{carlitz_lhs_coeff, carlitz_rhs_coeff, eulerian_r};
use bdes_core::perm::{distribution_table, enumerate_avoiders, statistic, Guards, PatternSet, StatName};
use bdes_core::symfunc::{is_schur_positive, is_symmetric, qsym_sum, schur_expand, SymExpansion};
use bdes_core::verify::{self, Check};

type Outcome = Result<(), String>;

fn from_checks(checks: Vec<Check>) -> Outcome {
    let total = checks.len();
    match checks.into_iter().find(|c| !c.pass) {
        None if total == 0 => Err("no checks ran".into()),
        None => Ok(()),
        Some(c) => Err(format!("{} (n={}): {}", c.name, c.n, c.witness.unwrap_or_default())),
    }
}

/// Sections of `# key` followed by `n: value` lines.
fn fixture(text: &str) -> BTreeMap<String, Vec<(usize, String)>> {
    let mut out: BTreeMap<String, Vec<(usize, String)>> = BTreeMap::new();
    let mut key = String::new();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        if let Some(k) = line.strip_prefix("# ") {
            key = k.trim().to_string();
        } else {
            let (n, v) = line.split_once(':').expect("fixture line");
            out.entry(key.clone())
                .or_default()
                .push((n.trim().parse().unwrap(), v.trim().to_string()));
        }
    }
    out
}

/// Coefficients of a polynomial in `t` written like `3+2t+t^2`.
fn t_poly(s: &str) -> Vec<u64> {
    let mut out = Vec::new();
    for term in s.split('+') {
        let (c, e) = match term.split_once('t') {
            None => (term, 0),
            Some((c, rest)) => (c, rest.strip_prefix('^').map_or(1, |e| e.parse().unwrap())),
        };
        let c: u64 = if c.is_empty() { 1 } else { c.parse().unwrap() };
        if out.len() <= e {
            out.resize(e + 1, 0);
        }
        out[e] += c;
    }
    out
}

fn table_reproduction() -> Outcome {
    let tables = fixture(include_str!("data/bdes_tables.txt"));
    if tables.len() != 7 {
        return Err(format!("expected 7 tables, found {}", tables.len()));
    }
    for (key, rows) in &tables {
        let pats: PatternSet = key.parse().map_err(|e| format!("{e}"))?;
        for (n, poly) in rows {
            let got = distribution_table(*n, &pats, StatName::Bdes).map_err(|e| e.to_string())?;
            if got.trimmed() != t_poly(poly).as_slice() {
                return Err(format!("{{{key}}} n={n}: got {:?}, table {poly}", got.trimmed()));
            }
        }
    }
    Ok(())
}

fn formula_vs_oracle() -> Outcome {
    let g = Guards::default();
    let mut checks = verify::formula_vs_brute(9, &g).map_err(|e| e.to_string())?;
    checks.extend(verify::closed_forms_extended(12).map_err(|e| e.to_string())?);
    from_checks(checks)
}

fn joint_equidistribution() -> Outcome {
    from_checks(verify::joint_231(9))
}

fn narayana() -> Outcome {
    from_checks(verify::narayana(9, 12).map_err(|e| e.to_string())?)
}

fn bijections() -> Outcome {
    from_checks(verify::bijection_suite(8))
}

fn dual_routes() -> Outcome {
    from_checks(verify::crossroutes(10).map_err(|e| e.to_string())?)
}

fn path_identities() -> Outcome {
    let mut checks = verify::g_path_sums(8).map_err(|e| e.to_string())?;
    checks.extend(verify::f_path_sums(8).map_err(|e| e.to_string())?);
    from_checks(checks)
}

fn schur_tables() -> Outcome {
    let g = Guards::default();
    let tables = fixture(include_str!("data/schur_tables.txt"));
    for (key, rows) in &tables {
        let pats: PatternSet = if key == "empty" { PatternSet::empty() } else { key.parse().unwrap() };
        if rows.len() != 8 {
            return Err(format!("{key}: expected rows 0..=7"));
        }
        for (n, text) in rows {
            let q = qsym_sum(*n, &pats, 1, &g).map_err(|e| e.to_string())?;
            if !is_symmetric(&q).map_err(|e| e.to_string())? {
                return Err(format!("{key} n={n}: not symmetric"));
            }
            let e = schur_expand(&q).map_err(|e| e.to_string())?;
            let want: SymExpansion = text.parse().map_err(|e| format!("{e}"))?;
            if e.coeffs != want.coeffs || !is_schur_positive(&e) {
                return Err(format!("{key} n={n}: got {e}, table {want}"));
            }
        }
    }
    Ok(())
}

fn conjecture_scans() -> Outcome {
    let g = Guards::default();
    let rr = conjecture_scan(Property::RealRooted, 10, &g).map_err(|e| e.to_string())?;
    if !rr.outcomes_as_predicted() {
        return Err(format!("real-rootedness: first failures {:?}", rr.first_failures()));
    }
    let lc = conjecture_scan(Property::LogConcave, 10, &g).map_err(|e| e.to_string())?;
    if !lc.outcomes_as_predicted() {
        return Err(format!("log-concavity: first failures {:?}", lc.first_failures()));
    }
    for n in 1..=9 {
        if !branden_check(n, &g).map_err(|e| e.to_string())? {
            return Err(format!("descent/peak identity fails at n={n}"));
        }
        if !stembridge_consistent(n, &g).map_err(|e| e.to_string())? {
            return Err(format!("real-rootedness of descent and peak polynomials disagree at n={n}"));
        }
    }
    let all = PatternSet::empty();
    for r in 0..=2u32 {
        for n in 0..=7 {
            let mut brute = vec![0i128; n.max(1)];
            for p in enumerate_avoiders(n, &all) {
                brute[statistic(&p, StatName::DesR(r)) as usize] += 1;
            }
            while brute.len() > 1 && *brute.last().unwrap() == 0 {
                brute.pop();
            }
            if eulerian_r(n, r as usize) != brute {
                return Err(format!("r-Eulerian recurrence, r={r}, n={n}"));
            }
            if n >= 1 {
                for k in 0..6 {
                    if carlitz_lhs_coeff(n, r as usize, k) != carlitz_rhs_coeff(n, r as usize, k) {
                        return Err(format!("Carlitz identity, r={r}, n={n}, k={k}"));
                    }
                }
            }
        }
    }
    Ok(())
}

fn wilf_classes() -> Outcome {
    from_checks(verify::class_equalities(8, &Guards::default()).map_err(|e| e.to_string())?)
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Outcome); 10] = [
        ("table reproduction", 120, table_reproduction),
        ("formula vs oracle", 300, formula_vs_oracle),
        ("joint equidistribution over 231-avoiders", 120, joint_equidistribution),
        ("Narayana distribution of rbdes", 60, narayana),
        ("bijection round trips and transfers", 180, bijections),
        ("dual-route series agreement", 60, dual_routes),
        ("path-sum identities for G and F", 120, path_identities),
        ("Schur expansion tables", 180, schur_tables),
        ("conjecture scans and identities", 180, conjecture_scans),
        ("bdes-Wilf classes", 180, wilf_classes),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(*budget);
        let pass = outcome.is_ok() && !over;
        println!(
            "criterion {}: {} {name} ({:.2}s, budget {budget}s)",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
        if let Err(why) = outcome {
            println!("    {why}");
        } else if over {
            println!("    over budget");
        }
        failed += !pass as usize;
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
