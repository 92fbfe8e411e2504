//! Exact checks for real-rootedness, log-concavity and unimodality of the
//! distribution polynomials, plus two identities tying the descent and peak
//! polynomials of 231-avoiders together.
//!
//! No floating point: real roots are counted with Sturm sequences over the
//! rationals after a square-free decomposition.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::Rational;
use crate::error::{Error, Result};
use crate::perm::{distribution_of, enumerate_avoiders, length3_pattern_sets, Guards, PatternSet, StatName};
use crate::symfunc::{negative_schur_term, qsym_sum, schur_expand, symmetry_witness};

/// Univariate polynomial over the rationals, lowest degree first, with no
/// trailing zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPolyQ(Vec<Rational>);

impl UniPolyQ {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPolyQ(coeffs)
    }

    pub fn from_ints<T: Into<BigInt> + Copy>(coeffs: &[T]) -> Self {
        UniPolyQ::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> &Rational {
        self.0.last().expect("zero polynomial has no leading coefficient")
    }

    pub fn derivative(&self) -> UniPolyQ {
        UniPolyQ::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i.into()))
                .collect(),
        )
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &UniPolyQ) -> (UniPolyQ, UniPolyQ) {
        let dd = d.degree().expect("division by the zero polynomial");
        let mut r = self.0.clone();
        let mut q = vec![Rational::zero(); self.0.len().saturating_sub(dd)];
        let lead = d.lead().clone();
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let c = r.last().unwrap() / &lead;
            for (i, dc) in d.0.iter().enumerate() {
                r[shift + i] -= &c * dc;
            }
            q[shift] = c;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (UniPolyQ::new(q), UniPolyQ::new(r))
    }

    fn monic(&self) -> UniPolyQ {
        let l = self.lead().clone();
        UniPolyQ(self.0.iter().map(|c| c / &l).collect())
    }

    pub fn gcd(&self, other: &UniPolyQ) -> UniPolyQ {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    pub fn mul(&self, other: &UniPolyQ) -> UniPolyQ {
        if self.is_zero() || other.is_zero() {
            return UniPolyQ(Vec::new());
        }
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPolyQ::new(out)
    }

    fn sign_at_pos_inf(&self) -> i32 {
        sign(self.lead())
    }

    fn sign_at_neg_inf(&self) -> i32 {
        let s = sign(self.lead());
        if self.0.len() % 2 == 0 {
            -s
        } else {
            s
        }
    }
}

fn sign(r: &Rational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

impl fmt::Display for UniPolyQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}t"),
                _ => format!("{c}t^{i}"),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join("+").replace("+-", "-"))
        }
    }
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let nz: Vec<i32> = signs.filter(|&s| s != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Distinct real roots of a nonzero polynomial.
pub fn real_root_count(p: &UniPolyQ) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::invalid("real root count of the zero polynomial"));
    }
    let g = p.gcd(&p.derivative());
    let sf = if g.degree() == Some(0) || g.is_zero() { p.clone() } else { p.div_rem(&g).0 };
    if sf.degree() == Some(0) {
        return Ok(0);
    }
    let mut chain = vec![sf.clone(), sf.derivative()];
    loop {
        let n = chain.len();
        let r = chain[n - 2].div_rem(&chain[n - 1]).1;
        if r.is_zero() {
            break;
        }
        chain.push(UniPolyQ::new(r.0.iter().map(|c| -c).collect()));
    }
    let at_neg = variations(chain.iter().map(UniPolyQ::sign_at_neg_inf));
    let at_pos = variations(chain.iter().map(UniPolyQ::sign_at_pos_inf));
    Ok(at_neg - at_pos)
}

/// Yun's algorithm: `p = c · Π a_i^i` with each `a_i` square-free and monic.
/// Returns `(i, a_i)` for the nonconstant factors.
pub fn square_free_decomposition(p: &UniPolyQ) -> Vec<(usize, UniPolyQ)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.div_rem(&a0).0;
    let mut c = dp.div_rem(&a0).0;
    let mut d = c_minus(&c, &b.derivative());
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((i, a.clone()));
        }
        b = b.div_rem(&a).0;
        c = d.div_rem(&a).0;
        d = c_minus(&c, &b.derivative());
        i += 1;
    }
    out
}

fn c_minus(a: &UniPolyQ, b: &UniPolyQ) -> UniPolyQ {
    let n = a.0.len().max(b.0.len());
    let z = Rational::zero();
    UniPolyQ::new(
        (0..n)
            .map(|i| a.0.get(i).unwrap_or(&z) - b.0.get(i).unwrap_or(&z))
            .collect(),
    )
}

/// Real roots counted with multiplicity.
pub fn real_roots_with_multiplicity(p: &UniPolyQ) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::invalid("real roots of the zero polynomial"));
    }
    square_free_decomposition(p)
        .iter()
        .map(|(i, a)| Ok(i * real_root_count(a)?))
        .sum()
}

/// Constants count as real-rooted.
pub fn is_real_rooted(p: &UniPolyQ) -> Result<bool> {
    Ok(real_roots_with_multiplicity(p)? == p.degree().unwrap_or(0))
}

/// First interior index `k` with `c_k^2 < c_{k-1} c_{k+1}`.
pub fn log_concavity_violation(c: &[u128]) -> Option<usize> {
    (1..c.len().saturating_sub(1)).find(|&k| c[k] * c[k] < c[k - 1] * c[k + 1])
}

pub fn is_log_concave(c: &[u128]) -> bool {
    log_concavity_violation(c).is_none()
}

/// First index where the sequence rises again after having fallen.
pub fn unimodality_violation(c: &[u128]) -> Option<usize> {
    let mut falling = false;
    for k in 1..c.len() {
        if c[k] < c[k - 1] {
            falling = true;
        } else if falling && c[k] > c[k - 1] {
            return Some(k);
        }
    }
    None
}

pub fn is_unimodal(c: &[u128]) -> bool {
    unimodality_violation(c).is_none()
}

fn trimmed(c: &[u64]) -> Vec<u128> {
    let end = c.iter().rposition(|&x| x != 0).map_or(0, |i| i + 1);
    c[..end].iter().map(|&x| x as u128).collect()
}

/// Descent and peak polynomials of 231-avoiders of length `n`.
fn des_and_pk_231(n: usize) -> (Vec<u128>, Vec<u128>) {
    let pats: PatternSet = "231".parse().unwrap();
    let av = enumerate_avoiders(n, &pats);
    let a = trimmed(&distribution_of(n, &pats, StatName::Des, &av).counts);
    let p = trimmed(&distribution_of(n, &pats, StatName::Pk, &av).counts);
    (a, p)
}

/// Checks `2^{n-1} A_n(t) = Σ_k p_k 4^k t^k (1+t)^{n-1-2k}`, the identity
/// `A_n(t) = ((1+t)/2)^{n-1} P_n(4t/(1+t)^2)` with denominators cleared, where
/// `A_n` and `P_n` are the descent and peak polynomials over `S_n(231)`.
pub fn branden_check(n: usize, guards: &Guards) -> Result<bool> {
    if n == 0 {
        return Err(Error::invalid("branden_check needs n >= 1"));
    }
    guards.check(n, &"231".parse().unwrap())?;
    let (a, p) = des_and_pk_231(n);
    let mut lhs: Vec<BigInt> = a.iter().map(|&c| BigInt::from(c) << (n - 1)).collect();
    let mut rhs = vec![BigInt::zero(); n];
    for (k, &pk) in p.iter().enumerate() {
        if 2 * k > n - 1 {
            return Ok(false);
        }
        let e = (n - 1 - 2 * k) as i64;
        let scale = BigInt::from(pk) << (2 * k);
        for j in 0..=e {
            rhs[k + j as usize] += &scale * BigInt::from(binomial(e, j));
        }
    }
    let trim = |v: &mut Vec<BigInt>| {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
    };
    trim(&mut lhs);
    trim(&mut rhs);
    Ok(lhs == rhs)
}

fn binomial(n: i64, k: i64) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Real-rootedness of the descent polynomial and of the peak polynomial of
/// 231-avoiders must agree, by the substitution criterion relating them.
pub fn stembridge_consistent(n: usize, guards: &Guards) -> Result<bool> {
    guards.check(n, &"231".parse().unwrap())?;
    let (a, p) = des_and_pk_231(n);
    let a = is_real_rooted(&UniPolyQ::from_ints(&a))?;
    let p = is_real_rooted(&UniPolyQ::from_ints(&p))?;
    Ok(a == p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    RealRooted,
    LogConcave,
    Unimodal,
    SchurPositive,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::RealRooted => "real-rooted",
            Property::LogConcave => "log-concave",
            Property::Unimodal => "unimodal",
            Property::SchurPositive => "schur-positive",
        })
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().replace('_', "-").as_str() {
            "real-rooted" => Ok(Property::RealRooted),
            "log-concave" => Ok(Property::LogConcave),
            "unimodal" => Ok(Property::Unimodal),
            "schur-positive" => Ok(Property::SchurPositive),
            _ => Err(Error::invalid(format!("unknown property {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRecord {
    pub property: Property,
    pub pattern_set: String,
    pub n: usize,
    pub pass: bool,
    /// Whether the conjectures predict `pass` for this case.
    pub expected: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub property: Property,
    pub max_n: usize,
    pub records: Vec<ScanRecord>,
}

/// Classes exempt from the real-rootedness prediction: the bdes-Wilf class of {123,132}.
pub fn real_rooted_exempt(pats: &PatternSet) -> bool {
    ["123,132", "123,213", "132,213"]
        .iter()
        .any(|s| *pats == s.parse::<PatternSet>().unwrap())
}

impl ScanReport {
    /// True when every predicted outcome was observed: all non-exempt cases
    /// pass, and each exempt pattern set fails for at least one `n`.
    pub fn outcomes_as_predicted(&self) -> bool {
        let plain = self.records.iter().filter(|r| r.expected).all(|r| r.pass);
        let mut exempt: Vec<&str> = self
            .records
            .iter()
            .filter(|r| !r.expected)
            .map(|r| r.pattern_set.as_str())
            .collect();
        exempt.dedup();
        let exempt_fail = exempt.iter().all(|set| {
            self.records
                .iter()
                .any(|r| r.pattern_set == *set && !r.pass)
        });
        plain && exempt_fail
    }

    /// Smallest failing `n` per pattern set.
    pub fn first_failures(&self) -> Vec<(String, usize)> {
        let mut out: Vec<(String, usize)> = Vec::new();
        for r in self.records.iter().filter(|r| !r.pass) {
            if !out.iter().any(|(p, _)| *p == r.pattern_set) {
                out.push((r.pattern_set.clone(), r.n));
            }
        }
        out
    }
}

fn check_poly(property: Property, counts: &[u64]) -> Result<(bool, Option<String>)> {
    let c = trimmed(counts);
    // an empty class has the zero polynomial, which satisfies all three vacuously
    if c.is_empty() {
        return Ok((true, None));
    }
    Ok(match property {
        Property::RealRooted => {
            let p = UniPolyQ::from_ints(&c);
            let real = real_roots_with_multiplicity(&p)?;
            let deg = p.degree().unwrap_or(0);
            let w = (real != deg).then(|| format!("{real} real roots with multiplicity, degree {deg}"));
            (real == deg, w)
        }
        Property::LogConcave => {
            let v = log_concavity_violation(&c);
            (v.is_none(), v.map(|k| format!("index {k}: {}^2 < {}*{}", c[k], c[k - 1], c[k + 1])))
        }
        Property::Unimodal => {
            let v = unimodality_violation(&c);
            (v.is_none(), v.map(|k| format!("rises again at index {k}")))
        }
        Property::SchurPositive => unreachable!(),
    })
}

/// Pattern sets scanned for Schur positivity: the increasing patterns of
/// lengths 3 to 5 and the empty set.
pub fn schur_scan_sets() -> Vec<PatternSet> {
    ["", "123", "1234", "12345"].iter().map(|s| s.parse().unwrap()).collect()
}

pub fn conjecture_scan(property: Property, max_n: usize, guards: &Guards) -> Result<ScanReport> {
    let mut cases: Vec<(PatternSet, usize)> = Vec::new();
    let sets = match property {
        Property::SchurPositive => schur_scan_sets(),
        _ => {
            let mut v = length3_pattern_sets(1);
            v.extend(length3_pattern_sets(2));
            v
        }
    };
    for pats in &sets {
        for n in 0..=max_n {
            match property {
                Property::SchurPositive => guards.check_qsym(n, pats)?,
                _ => guards.check(n, pats)?,
            }
            cases.push((pats.clone(), n));
        }
    }
    let records = cases
        .par_iter()
        .map(|(pats, n)| -> Result<ScanRecord> {
            let (pass, witness) = match property {
                Property::SchurPositive => {
                    let q = qsym_sum(*n, pats, 1, guards)?;
                    if let Some((a, b)) = symmetry_witness(&q)? {
                        (false, Some(format!("not symmetric: M{a} and M{b} differ")))
                    } else {
                        let e = schur_expand(&q)?;
                        let neg = negative_schur_term(&e);
                        (neg.is_none(), neg.map(|(p, c)| format!("coefficient {c} on s{p}")))
                    }
                }
                _ => {
                    let av = enumerate_avoiders(*n, pats);
                    check_poly(property, &distribution_of(*n, pats, StatName::Bdes, &av).counts)?
                }
            };
            Ok(ScanRecord {
                property,
                pattern_set: pats.to_string(),
                n: *n,
                pass,
                expected: !(property == Property::RealRooted && real_rooted_exempt(pats)),
                witness,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanReport {
        property,
        max_n,
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPolyQ {
        UniPolyQ::from_ints(c)
    }

    #[test]
    fn root_counts() {
        assert_eq!(real_root_count(&p(&[4, 9, 1])).unwrap(), 2);
        assert_eq!(real_root_count(&p(&[1, 0, 1])).unwrap(), 0);
        assert_eq!(real_root_count(&p(&[5])).unwrap(), 0);
        assert!(is_real_rooted(&p(&[5])).unwrap());
        assert!(real_root_count(&p(&[])).is_err());
        // (t+1)^2 (t-2) has two distinct real roots, three with multiplicity
        let q = p(&[1, 1]).mul(&p(&[1, 1])).mul(&p(&[-2, 1]));
        assert_eq!(real_root_count(&q).unwrap(), 2);
        assert_eq!(real_roots_with_multiplicity(&q).unwrap(), 3);
        // (t^2+1)^2 has none
        let q = p(&[1, 0, 1]).mul(&p(&[1, 0, 1]));
        assert!(!is_real_rooted(&q).unwrap());
    }

    #[test]
    fn yun() {
        let q = p(&[1, 1]).mul(&p(&[1, 1])).mul(&p(&[-2, 1])).mul(&p(&[3, 0, 1]));
        let d = square_free_decomposition(&q);
        assert_eq!(d.len(), 2);
        assert_eq!(d[0].0, 1);
        assert_eq!(d[0].1.degree(), Some(3));
        assert_eq!(d[1], (2, p(&[1, 1])));
    }

    #[test]
    fn sequences() {
        assert!(is_log_concave(&[5, 25, 12]));
        assert!(!is_log_concave(&[1, 1, 2]));
        assert!(is_log_concave(&[7]));
        assert!(is_unimodal(&[1, 3, 3, 2]));
        assert!(!is_unimodal(&[2, 1, 2]));
    }

    #[test]
    fn branden() {
        let g = Guards::default();
        assert!(branden_check(1, &g).unwrap());
        assert_eq!(des_and_pk_231(3), (vec![1, 3, 1], vec![4, 1]));
        assert!(branden_check(3, &g).unwrap());
        assert!(branden_check(7, &g).unwrap());
        assert!(stembridge_consistent(6, &g).unwrap());
    }

    #[test]
    fn scans_match_predictions() {
        let g = Guards::default();
        let r = conjecture_scan(Property::RealRooted, 8, &g).unwrap();
        assert!(r.outcomes_as_predicted());
        let first: Vec<usize> = r.first_failures().iter().map(|f| f.1).collect();
        assert_eq!(first, vec![7, 7, 7]);
        assert!(conjecture_scan(Property::LogConcave, 8, &g).unwrap().outcomes_as_predicted());
        assert!(conjecture_scan(Property::SchurPositive, 6, &g).unwrap().outcomes_as_predicted());
    }

    #[test]
    fn empty_class_is_vacuous() {
        assert_eq!(check_poly(Property::RealRooted, &[0, 0]).unwrap(), (true, None));
    }
}
