//! Exhaustive verification suites shared by the CLI `verify` command and the
//! acceptance tests. Each suite returns flat check records.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{rat, Monomial, MultiPoly, TruncatedSeries, Var};
use crate::bijections::{verify_composites, verify_round_trip, verify_transfer, BijectionId};
use crate::error::{Error, Result};
use crate::genfun::{
    b231_by_decomposition, b231_joint, catalan, expand, expand_functional, formula_row, t_rows, FormulaId, GfId,
};
use crate::paths::{all_dyck_paths, path_statistic, PathStat};
use crate::perm::{
    distribution_of, enumerate_avoiders, joint_distribution, length3_pattern_sets, Guards, PatternSet, StatName,
};

/// Outcome of one exhaustive check at one size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub n: usize,
    pub population: usize,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, n: usize, population: usize, failure: Option<String>) -> Self {
        Check {
            name: name.into(),
            n,
            population,
            pass: failure.is_none(),
            witness: failure,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    ClassEqualities,
    Formulas,
    Bijections,
    GenfunCrossroutes,
    All,
}

impl FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "class-equalities" => Ok(Scope::ClassEqualities),
            "formulas" => Ok(Scope::Formulas),
            "bijections" => Ok(Scope::Bijections),
            "genfun-crossroutes" => Ok(Scope::GenfunCrossroutes),
            "all" => Ok(Scope::All),
            _ => Err(Error::invalid(format!("unknown verify scope {s:?}"))),
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scope::ClassEqualities => "class-equalities",
            Scope::Formulas => "formulas",
            Scope::Bijections => "bijections",
            Scope::GenfunCrossroutes => "genfun-crossroutes",
            Scope::All => "all",
        })
    }
}

/// How the bdes polynomials of a class are computed without enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Formula(FormulaId),
    Gf(GfId),
}

/// The bdes-Wilf classes of one or two length-3 patterns, each with its
/// enumeration route.
pub fn wilf_classes() -> Vec<(Vec<PatternSet>, Route)> {
    let raw: [(&[&str], Route); 11] = [
        (&["231", "312"], Route::Formula(FormulaId::B231)),
        (&["132", "213"], Route::Gf(GfId::B132)),
        (&["123"], Route::Formula(FormulaId::B123)),
        (&["321"], Route::Gf(GfId::B321)),
        (&["213,231", "132,312", "213,312", "132,231"], Route::Formula(FormulaId::B213_231)),
        (&["231,321", "312,321"], Route::Gf(GfId::B231_321)),
        (&["123,231", "123,312"], Route::Formula(FormulaId::B123_231)),
        (&["132,321", "213,321"], Route::Formula(FormulaId::B132_321)),
        (&["123,132", "123,213", "132,213"], Route::Gf(GfId::B123_132)),
        (&["123,321"], Route::Gf(GfId::B123_321)),
        (&["231,312"], Route::Formula(FormulaId::B231_312)),
    ];
    raw.iter()
        .map(|(sets, route)| (sets.iter().map(|s| s.parse().unwrap()).collect(), *route))
        .collect()
}

/// Rows `0..=max_n` of a route, trailing zeros removed.
pub fn route_rows(route: Route, max_n: usize) -> Result<Vec<Vec<u128>>> {
    let trim = |mut v: Vec<u128>| {
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
        if v.is_empty() {
            v.push(0);
        }
        v
    };
    match route {
        Route::Formula(id) => (0..=max_n).map(|n| Ok(trim(formula_row(id, n)?))).collect(),
        Route::Gf(id) => t_rows(&expand(id, max_n)?)?
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|c| u128::try_from(c).map_err(|_| Error::Internal(format!("negative coefficient in {id}"))))
                    .collect::<Result<Vec<u128>>>()
                    .map(trim)
            })
            .collect(),
    }
}

/// Brute-force bdes row, trailing zeros removed.
fn brute_row(n: usize, pats: &PatternSet, stat: StatName) -> Vec<u128> {
    let av = enumerate_avoiders(n, pats);
    let mut v: Vec<u128> = distribution_of(n, pats, stat, &av).counts.iter().map(|&c| c as u128).collect();
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

fn all_small_sets() -> Vec<PatternSet> {
    let mut v = length3_pattern_sets(1);
    v.extend(length3_pattern_sets(2));
    v
}

/// Compares bdes distributions of every singleton and pair of length-3
/// patterns for `n <= max_n` and checks the induced partition.
pub fn class_equalities(max_n: usize, guards: &Guards) -> Result<Vec<Check>> {
    let sets = all_small_sets();
    for p in &sets {
        guards.check(max_n, p)?;
    }
    let rows: BTreeMap<String, Vec<Vec<u128>>> = sets
        .par_iter()
        .map(|p| (p.to_string(), (0..=max_n).map(|n| brute_row(n, p, StatName::Bdes)).collect()))
        .collect();
    let classes = wilf_classes();
    let mut checks = Vec::new();
    for (members, _) in &classes {
        let first = &rows[&members[0].to_string()];
        let bad = members
            .iter()
            .find_map(|m| {
                let r = &rows[&m.to_string()];
                (0..=max_n).find(|&n| r[n] != first[n]).map(|n| format!("{} and {} differ at n={n}", members[0], m))
            });
        checks.push(Check::new(format!("class {} equidistributed", names(members)), max_n, members.len(), bad));
    }
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            let (a, b) = (&classes[i].0[0], &classes[j].0[0]);
            let (ra, rb) = (&rows[&a.to_string()], &rows[&b.to_string()]);
            let split = (0..=max_n).find(|&n| ra[n] != rb[n]);
            let failure = split.is_none().then(|| format!("no n <= {max_n} separates {a} from {b}"));
            let mut c = Check::new(format!("classes of {a} and {b} distinct"), max_n, 2, failure);
            if let Some(n) = split {
                c.name = format!("classes of {a} and {b} distinct (first at n={n})");
            }
            checks.push(c);
        }
    }
    let covered: usize = classes.iter().map(|c| c.0.len()).sum();
    checks.push(Check::new(
        "classes cover every singleton and pair",
        max_n,
        sets.len(),
        (covered != sets.len()).then(|| format!("{covered} sets in classes, {} scanned", sets.len())),
    ));
    Ok(checks)
}

fn names(sets: &[PatternSet]) -> String {
    let v: Vec<String> = sets.iter().map(|s| format!("{{{s}}}")).collect();
    v.join(" ")
}

/// Every class's enumeration route against brute force for `n <= max_n`.
pub fn formula_vs_brute(max_n: usize, guards: &Guards) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (members, route) in wilf_classes() {
        let want = route_rows(route, max_n)?;
        for pats in &members {
            guards.check(max_n, pats)?;
            let bad = (0..=max_n).find_map(|n| {
                let got = brute_row(n, pats, StatName::Bdes);
                (got != want[n]).then(|| format!("n={n}: brute {got:?}, route {:?}", want[n]))
            });
            let pop = (0..=max_n).map(|n| enumerate_avoiders(n, pats).len()).sum();
            checks.push(Check::new(format!("{route:?} matches bdes over S_n({pats})"), max_n, pop, bad));
        }
    }
    Ok(checks)
}

/// The 231 and 123 product formulas against the recursive and
/// generating-function routes, through `n = max_n`.
pub fn closed_forms_extended(max_n: usize) -> Result<Vec<Check>> {
    let rec = b231_by_decomposition(max_n);
    let bad231 = (0..=max_n).find_map(|n| {
        let f: Vec<i128> = trim_i(formula_row(FormulaId::B231, n).ok()?.iter().map(|&c| c as i128).collect());
        (f != rec[n]).then(|| format!("n={n}: formula {f:?}, recursion {:?}", rec[n]))
    });
    let gf = t_rows(&expand(GfId::B123, max_n)?)?;
    let pipe = t_rows(&expand_functional(GfId::B123, max_n)?)?;
    let bad123 = (0..=max_n).find_map(|n| {
        let f: Vec<i128> = trim_i(formula_row(FormulaId::B123, n).ok()?.iter().map(|&c| c as i128).collect());
        let g = trim_i(gf[n].clone());
        let p = trim_i(pipe[n].clone());
        (f != g || f != p).then(|| format!("n={n}: formula {f:?}, closed form {g:?}, pipeline {p:?}"))
    });
    Ok(vec![
        Check::new("b231 formula = decomposition recursion", max_n, max_n + 1, bad231),
        Check::new("b123 formula = closed form = composition pipeline", max_n, max_n + 1, bad123),
    ])
}

fn trim_i(mut v: Vec<i128>) -> Vec<i128> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    if v.is_empty() {
        v.push(0);
    }
    v
}

/// `(bdes, des)` and `(pk, des)` agree jointly over `S_n(231)` and match the
/// closed joint formula.
pub fn joint_231(max_n: usize) -> Vec<Check> {
    let pats: PatternSet = "231".parse().unwrap();
    (0..=max_n)
        .map(|n| {
            let av = enumerate_avoiders(n, &pats);
            let a = joint_distribution(&av, n, StatName::Bdes, StatName::Des);
            let b = joint_distribution(&av, n, StatName::Pk, StatName::Des);
            let mut bad = (a != b).then(|| format!("(bdes,des) {a:?} vs (pk,des) {b:?}"));
            if bad.is_none() {
                'outer: for (k, row) in a.iter().enumerate() {
                    for (j, &c) in row.iter().enumerate() {
                        if c as u128 != b231_joint(n, j, k) {
                            bad = Some(format!("k={k}, j={j}: {c} vs formula {}", b231_joint(n, j, k)));
                            break 'outer;
                        }
                    }
                }
            }
            Check::new("joint (bdes,des) = (pk,des) = formula over S_n(231)", n, av.len(), bad)
        })
        .collect()
}

/// rbdes over `S_n(123)` is Narayana for `n <= max_n`, and Narayana rows sum
/// to Catalan numbers for `n <= catalan_n`.
pub fn narayana(max_n: usize, catalan_n: usize) -> Result<Vec<Check>> {
    let pats: PatternSet = "123".parse().unwrap();
    let mut checks = Vec::new();
    for n in 0..=max_n {
        let got = brute_row(n, &pats, StatName::Rbdes);
        let mut want = formula_row(FormulaId::Narayana, n)?;
        while want.len() > 1 && *want.last().unwrap() == 0 {
            want.pop();
        }
        let pop = enumerate_avoiders(n, &pats).len();
        checks.push(Check::new(
            "rbdes over S_n(123) is Narayana",
            n,
            pop,
            (got != want).then(|| format!("{got:?} vs {want:?}")),
        ));
    }
    for n in 0..=catalan_n {
        let s: u128 = formula_row(FormulaId::Narayana, n)?.iter().sum();
        checks.push(Check::new(
            "Narayana row sums to Catalan",
            n,
            n + 1,
            (s != catalan(n)).then(|| format!("{s} vs {}", catalan(n))),
        ));
    }
    Ok(checks)
}

pub fn bijection_suite(max_n: usize) -> Vec<Check> {
    let mut checks = Vec::new();
    for id in BijectionId::ALL {
        for n in 0..=max_n {
            checks.extend(verify_round_trip(id, n));
            checks.extend(verify_transfer(id, n));
        }
    }
    for n in 0..=max_n {
        checks.extend(verify_composites(n));
    }
    checks
}

/// Closed form against functional route for each id that has both.
pub fn crossroutes(order: usize) -> Result<Vec<Check>> {
    let ids = [
        GfId::B132,
        GfId::V,
        GfId::What,
        GfId::W,
        GfId::Gtilde,
        GfId::G,
        GfId::W1Words,
        GfId::B321,
        GfId::B123_132,
        GfId::B123,
        GfId::Bgrave123,
    ];
    ids.par_iter()
        .map(|&id| {
            let a = expand(id, order)?;
            let b = expand_functional(id, order)?;
            let bad = first_difference(&a, &b);
            Ok(Check::new(format!("{id}: closed form = functional route"), order, order + 1, bad))
        })
        .collect()
}

fn first_difference(a: &TruncatedSeries, b: &TruncatedSeries) -> Option<String> {
    (0..=a.order().min(b.order()))
        .find(|&n| a.coeff(n) != b.coeff(n))
        .map(|n| format!("x^{n}: {} vs {}", a.coeff(n), b.coeff(n)))
}

/// `Σ_{D_m} s^pk t^con` against the coefficients of `G`.
pub fn g_path_sums(max_m: usize) -> Result<Vec<Check>> {
    let g = expand(GfId::G, max_m)?;
    Ok((0..=max_m)
        .map(|m| {
            let paths = all_dyck_paths(m);
            let mut sum = MultiPoly::zero();
            for p in &paths {
                let mut e = Monomial::one();
                e.0[Var::S as usize] = path_statistic(p, PathStat::Pk) as u16;
                e.0[Var::T as usize] = path_statistic(p, PathStat::Con) as u16;
                sum.add_term(e, rat(1));
            }
            let bad = (sum != *g.coeff(m)).then(|| format!("paths {sum}, series {}", g.coeff(m)));
            Check::new("G coefficient = sum of s^pk t^con over Dyck paths", m, paths.len(), bad)
        })
        .collect())
}

/// `Σ_{D_n} u^hibasc v^lobasc w^ini_UU` against the coefficients of `F`.
pub fn f_path_sums(max_n: usize) -> Result<Vec<Check>> {
    let f = expand(GfId::F, max_n)?;
    Ok((0..=max_n)
        .map(|n| {
            let paths = all_dyck_paths(n);
            let mut sum = MultiPoly::zero();
            for p in &paths {
                let mut e = Monomial::one();
                e.0[Var::U as usize] = path_statistic(p, PathStat::Hibasc) as u16;
                e.0[Var::V as usize] = path_statistic(p, PathStat::Lobasc) as u16;
                e.0[Var::W as usize] = path_statistic(p, PathStat::IniUU) as u16;
                sum.add_term(e, rat(1));
            }
            let bad = (sum != *f.coeff(n)).then(|| format!("paths {sum}, series {}", f.coeff(n)));
            Check::new("F coefficient = sum of u^hibasc v^lobasc w^ini_UU over Dyck paths", n, paths.len(), bad)
        })
        .collect())
}

/// Runs a verification scope. `max_n` bounds enumeration; series checks run
/// through order `max(max_n, 10)` and path sums through `max_n`.
pub fn run(scope: Scope, max_n: usize, guards: &Guards) -> Result<Report> {
    let mut checks = Vec::new();
    let want = |s: Scope| scope == s || scope == Scope::All;
    if want(Scope::ClassEqualities) {
        checks.extend(class_equalities(max_n, guards)?);
    }
    if want(Scope::Formulas) {
        checks.extend(formula_vs_brute(max_n, guards)?);
        checks.extend(closed_forms_extended(max_n.max(12))?);
        checks.extend(joint_231(max_n));
        checks.extend(narayana(max_n, max_n.max(12))?);
    }
    if want(Scope::Bijections) {
        checks.extend(bijection_suite(max_n));
    }
    if want(Scope::GenfunCrossroutes) {
        guards.check_order(max_n.max(10))?;
        checks.extend(crossroutes(max_n.max(10))?);
        checks.extend(g_path_sums(max_n)?);
        checks.extend(f_path_sums(max_n)?);
    }
    Ok(Report { checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classes_partition_the_small_sets() {
        let mut all: Vec<String> = wilf_classes().iter().flat_map(|c| c.0.iter().map(|p| p.to_string())).collect();
        all.sort();
        let mut want: Vec<String> = all_small_sets().iter().map(|p| p.to_string()).collect();
        want.sort();
        assert_eq!(all, want);
    }

    #[test]
    fn small_scopes_pass() {
        let g = Guards::default();
        for scope in [Scope::ClassEqualities, Scope::Formulas, Scope::Bijections, Scope::GenfunCrossroutes] {
            let r = run(scope, 5, &g).unwrap();
            let bad: Vec<&Check> = r.failures().collect();
            assert!(bad.is_empty(), "{scope}: {bad:?}");
        }
    }
}
