//! Quasisymmetric generating functions of descent-type sets over avoider
//! classes, symmetry detection, and expansion in Schur functions.
//!
//! Everything is basis bookkeeping: an expansion is a map from compositions
//! (or partitions) to integer coefficients.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{enumerate_avoiders, statistic_set, Guards, PatternSet, SetStat};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Composition(pub Vec<u32>);

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Partition(pub Vec<u32>);

impl Composition {
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The composition of `n` whose partial sums are the elements of `set`.
    pub fn from_set(n: u32, set: &BTreeSet<u32>) -> Result<Composition> {
        if let Some(&bad) = set.iter().find(|&&i| i == 0 || i >= n) {
            return Err(Error::invalid(format!("{bad} is not in [1, {}]", n.saturating_sub(1))));
        }
        let mut parts = Vec::with_capacity(set.len() + 1);
        let mut prev = 0;
        for &i in set.iter().chain(std::iter::once(&n)) {
            if n > 0 {
                parts.push(i - prev);
            }
            prev = i;
        }
        Ok(Composition(parts))
    }

    pub fn to_set(&self) -> BTreeSet<u32> {
        let mut acc = 0;
        let mut out = BTreeSet::new();
        for &p in self.0.iter().take(self.0.len().saturating_sub(1)) {
            acc += p;
            out.insert(acc);
        }
        out
    }

    pub fn sorted(&self) -> Partition {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition(v)
    }
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Partition> {
        if parts.contains(&0) {
            return Err(Error::invalid("partition parts must be positive"));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }
}

fn write_parts(f: &mut fmt::Formatter<'_>, parts: &[u32]) -> fmt::Result {
    f.write_str("(")?;
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{p}")?;
    }
    f.write_str(")")
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_parts(f, &self.0)
    }
}

/// All partitions of `n`, in decreasing lexicographic order (so `(n)` first).
pub fn partitions(n: u32) -> Vec<Partition> {
    fn go(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            go(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// All distinct rearrangements of a partition.
fn rearrangements(lambda: &Partition) -> Vec<Composition> {
    fn go(counts: &mut BTreeMap<u32, usize>, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if left == 0 {
            out.push(Composition(cur.clone()));
            return;
        }
        let keys: Vec<u32> = counts.iter().filter(|(_, &c)| c > 0).map(|(&k, _)| k).collect();
        for k in keys {
            *counts.get_mut(&k).unwrap() -= 1;
            cur.push(k);
            go(counts, left - 1, cur, out);
            cur.pop();
            *counts.get_mut(&k).unwrap() += 1;
        }
    }
    let mut counts = BTreeMap::new();
    for &p in &lambda.0 {
        *counts.entry(p).or_insert(0) += 1;
    }
    let mut out = Vec::new();
    go(&mut counts, lambda.0.len(), &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum QsymBasis {
    Fundamental,
    MonomialQsym,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SymBasis {
    MonomialSym,
    Schur,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QsymExpansion {
    pub n: u32,
    pub basis: QsymBasis,
    pub coeffs: BTreeMap<Composition, i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymExpansion {
    pub n: u32,
    pub basis: SymBasis,
    pub coeffs: BTreeMap<Partition, i64>,
}

impl QsymExpansion {
    pub fn zero(n: u32, basis: QsymBasis) -> Self {
        QsymExpansion {
            n,
            basis,
            coeffs: BTreeMap::new(),
        }
    }

    fn add(&mut self, c: Composition, k: i64) {
        let e = self.coeffs.entry(c.clone()).or_insert(0);
        *e += k;
        if *e == 0 {
            self.coeffs.remove(&c);
        }
    }

    pub fn coeff(&self, c: &Composition) -> i64 {
        self.coeffs.get(c).copied().unwrap_or(0)
    }

    /// Sum of the coefficients; for a fundamental expansion of a class sum
    /// this is the class size.
    pub fn total(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn to_monomial(&self) -> Result<QsymExpansion> {
        match self.basis {
            QsymBasis::MonomialQsym => Ok(self.clone()),
            QsymBasis::Fundamental => {
                let mut out = QsymExpansion::zero(self.n, QsymBasis::MonomialQsym);
                for (alpha, &c) in &self.coeffs {
                    for (beta, k) in fundamental_to_monomial(self.n, &alpha.to_set())?.coeffs {
                        out.add(beta, c * k);
                    }
                }
                Ok(out)
            }
        }
    }
}

impl SymExpansion {
    pub fn coeff(&self, p: &Partition) -> i64 {
        self.coeffs.get(p).copied().unwrap_or(0)
    }

    /// Every partition with its coefficient, as `[[parts], coeff]` pairs.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.coeffs
                .iter()
                .map(|(p, c)| serde_json::json!([p.0, c]))
                .collect(),
        )
    }
}

/// Prints `c·X(parts)` terms in increasing lexicographic order of the index,
/// dropping unit coefficients, e.g. `s(2,1)+4s(3)`.
fn write_terms<K: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    letter: &str,
    terms: impl Iterator<Item = (K, i64)>,
) -> fmt::Result {
    let mut first = true;
    for (k, c) in terms {
        if c < 0 {
            f.write_str("-")?;
        } else if !first {
            f.write_str("+")?;
        }
        if c.abs() != 1 {
            write!(f, "{}", c.abs())?;
        }
        write!(f, "{letter}{k}")?;
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for QsymExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self.basis {
            QsymBasis::Fundamental => "F",
            QsymBasis::MonomialQsym => "M",
        };
        write_terms(f, letter, self.coeffs.iter().map(|(k, &c)| (k, c)))
    }
}

impl fmt::Display for SymExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self.basis {
            SymBasis::MonomialSym => "m",
            SymBasis::Schur => "s",
        };
        write_terms(f, letter, self.coeffs.iter().map(|(k, &c)| (k, c)))
    }
}

impl FromStr for SymExpansion {
    type Err = Error;

    /// Parses Schur expansions such as `s(2,2,1)+4s(3,2)` or `s()`.
    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::invalid(format!("cannot parse Schur expansion {text:?}"));
        let mut coeffs = BTreeMap::new();
        let mut n = None;
        let body: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if body != "0" {
            let mut rest = body.as_str();
            while !rest.is_empty() {
                let (sign, r) = match rest.as_bytes()[0] {
                    b'-' => (-1, &rest[1..]),
                    b'+' => (1, &rest[1..]),
                    _ => (1, rest),
                };
                let s_at = r.find('s').ok_or_else(bad)?;
                let c: i64 = if s_at == 0 { 1 } else { r[..s_at].parse().map_err(|_| bad())? };
                let close = r.find(')').ok_or_else(bad)?;
                let inner = r.get(s_at + 2..close).filter(|_| r[s_at + 1..].starts_with('(')).ok_or_else(bad)?;
                let parts: Vec<u32> = if inner.is_empty() {
                    Vec::new()
                } else {
                    inner.split(',').map(|p| p.parse().map_err(|_| bad())).collect::<Result<_>>()?
                };
                let lambda = Partition::new(parts)?;
                if *n.get_or_insert(lambda.weight()) != lambda.weight() {
                    return Err(Error::invalid(format!("mixed weights in {text:?}")));
                }
                *coeffs.entry(lambda).or_insert(0) += sign * c;
                rest = &r[close + 1..];
            }
        }
        coeffs.retain(|_, c| *c != 0);
        Ok(SymExpansion {
            n: n.unwrap_or(0),
            basis: SymBasis::Schur,
            coeffs,
        })
    }
}

/// `F_{n,S}` as a sum of monomial quasisymmetric functions over the
/// compositions refining the composition of `S`.
pub fn fundamental_to_monomial(n: u32, set: &BTreeSet<u32>) -> Result<QsymExpansion> {
    Composition::from_set(n, set)?;
    let free: Vec<u32> = (1..n).filter(|i| !set.contains(i)).collect();
    let mut out = QsymExpansion::zero(n, QsymBasis::MonomialQsym);
    for mask in 0u64..1 << free.len() {
        let mut s = set.clone();
        for (b, &i) in free.iter().enumerate() {
            if mask >> b & 1 == 1 {
                s.insert(i);
            }
        }
        out.add(Composition::from_set(n, &s)?, 1);
    }
    Ok(out)
}

/// `Σ F_{n, Des_r(π)}` over `S_n(Π)`, in the fundamental basis.
pub fn qsym_sum_fundamental(n: usize, pats: &PatternSet, r: u32, guards: &Guards) -> Result<QsymExpansion> {
    guards.check_qsym(n, pats)?;
    let avoiders = enumerate_avoiders(n, pats);
    let counts = avoiders
        .par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<BTreeSet<u32>, i64>, p| {
            *acc.entry(statistic_set(p, SetStat::DesR(r))).or_insert(0) += 1;
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    let mut out = QsymExpansion::zero(n as u32, QsymBasis::Fundamental);
    for (set, c) in counts {
        out.add(Composition::from_set(n as u32, &set)?, c);
    }
    Ok(out)
}

/// `Σ F_{n, Des_r(π)}` over `S_n(Π)`, in the monomial quasisymmetric basis.
pub fn qsym_sum(n: usize, pats: &PatternSet, r: u32, guards: &Guards) -> Result<QsymExpansion> {
    qsym_sum_fundamental(n, pats, r, guards)?.to_monomial()
}

/// Two rearrangements of the same partition with different coefficients, if any.
pub fn symmetry_witness(q: &QsymExpansion) -> Result<Option<(Composition, Composition)>> {
    let q = q.to_monomial()?;
    let mut seen = BTreeSet::new();
    // compositions with coefficient zero do not appear in the map, so compare
    // against every rearrangement rather than only the stored ones
    for (alpha, &c) in &q.coeffs {
        let lambda = alpha.sorted();
        if seen.contains(&lambda) {
            continue;
        }
        for beta in rearrangements(&lambda) {
            if q.coeff(&beta) != c {
                let (a, b) = if *alpha < beta { (alpha.clone(), beta) } else { (beta, alpha.clone()) };
                return Ok(Some((a, b)));
            }
        }
        seen.insert(lambda);
    }
    Ok(None)
}

pub fn is_symmetric(q: &QsymExpansion) -> Result<bool> {
    Ok(symmetry_witness(q)?.is_none())
}

/// Number of semistandard tableaux of shape `lambda` and content `mu`.
pub fn kostka(lambda: &Partition, mu: &Partition) -> u64 {
    static MEMO: Mutex<Option<HashMap<(Vec<u32>, Vec<u32>), u64>>> = Mutex::new(None);
    if let Some(&v) = MEMO
        .lock()
        .unwrap()
        .get_or_insert_with(HashMap::new)
        .get(&(lambda.0.clone(), mu.0.clone()))
    {
        return v;
    }
    let v = kostka_uncached(&lambda.0, &mu.0);
    MEMO.lock()
        .unwrap()
        .get_or_insert_with(HashMap::new)
        .insert((lambda.0.clone(), mu.0.clone()), v);
    v
}

/// Peels off the cells holding the largest entry, which form a horizontal strip.
fn kostka_uncached(lambda: &[u32], mu: &[u32]) -> u64 {
    let w: u32 = lambda.iter().sum();
    if w != mu.iter().sum::<u32>() {
        return 0;
    }
    let Some((&last, rest)) = mu.split_last() else {
        return 1;
    };
    let mut total = 0;
    let mut nu = lambda.to_vec();
    strips(lambda, 0, last, &mut nu, &mut |inner| {
        let trimmed: Vec<u32> = inner.iter().copied().filter(|&p| p > 0).collect();
        total += kostka_uncached(&trimmed, rest);
    });
    total
}

/// Enumerates `nu` with `lambda / nu` a horizontal strip of `size` cells.
fn strips(lambda: &[u32], row: usize, size: u32, nu: &mut Vec<u32>, f: &mut dyn FnMut(&[u32])) {
    if row == lambda.len() {
        if size == 0 {
            f(nu);
        }
        return;
    }
    // row i may lose cells down to the length of row i+1
    let floor = lambda.get(row + 1).copied().unwrap_or(0);
    for take in 0..=size.min(lambda[row] - floor) {
        nu[row] = lambda[row] - take;
        strips(lambda, row + 1, size - take, nu, f);
    }
    nu[row] = lambda[row];
}

/// Collapses a symmetric monomial-qsym expansion to monomial symmetric functions.
pub fn to_monomial_sym(q: &QsymExpansion) -> Result<SymExpansion> {
    if let Some((a, b)) = symmetry_witness(q)? {
        return Err(Error::invalid(format!("not symmetric: M{a} and M{b} differ")));
    }
    let q = q.to_monomial()?;
    let mut coeffs = BTreeMap::new();
    for (alpha, &c) in &q.coeffs {
        coeffs.entry(alpha.sorted()).or_insert(c);
    }
    Ok(SymExpansion {
        n: q.n,
        basis: SymBasis::MonomialSym,
        coeffs,
    })
}

/// Solves `m = Σ_λ a_λ s_λ` against the unitriangular Kostka matrix, working
/// down decreasing lexicographic order, a linear extension of dominance.
pub fn schur_expand(q: &QsymExpansion) -> Result<SymExpansion> {
    let m = to_monomial_sym(q)?;
    let parts = partitions(m.n);
    let mut coeffs = BTreeMap::new();
    for (i, mu) in parts.iter().enumerate() {
        let mut c = m.coeff(mu);
        for lambda in &parts[..i] {
            let a: i64 = coeffs.get(lambda).copied().unwrap_or(0);
            if a != 0 {
                c -= a * kostka(lambda, mu) as i64;
            }
        }
        if c != 0 {
            coeffs.insert(mu.clone(), c);
        }
    }
    Ok(SymExpansion {
        n: m.n,
        basis: SymBasis::Schur,
        coeffs,
    })
}

/// Re-expands a Schur expansion in the monomial quasisymmetric basis.
pub fn schur_to_monomial_qsym(e: &SymExpansion) -> QsymExpansion {
    let mut out = QsymExpansion::zero(e.n, QsymBasis::MonomialQsym);
    for mu in partitions(e.n) {
        let c: i64 = e
            .coeffs
            .iter()
            .map(|(lambda, &a)| a * kostka(lambda, &mu) as i64)
            .sum();
        if c != 0 {
            for alpha in rearrangements(&mu) {
                out.add(alpha, c);
            }
        }
    }
    out
}

pub fn is_schur_positive(e: &SymExpansion) -> bool {
    e.coeffs.values().all(|&c| c >= 0)
}

/// The first negative Schur coefficient, if any.
pub fn negative_schur_term(e: &SymExpansion) -> Option<(Partition, i64)> {
    e.coeffs.iter().find(|(_, &c)| c < 0).map(|(p, &c)| (p.clone(), c))
}
