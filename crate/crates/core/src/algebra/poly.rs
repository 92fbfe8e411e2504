use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Rational;

pub const NVARS: usize = 5;

/// Polynomial variables, in the order used for exponent vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    S = 0,
    T = 1,
    U = 2,
    V = 3,
    W = 4,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::S, Var::T, Var::U, Var::V, Var::W];

    pub fn name(self) -> char {
        ['s', 't', 'u', 'v', 'w'][self as usize]
    }
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u16; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; NVARS];
        e[v as usize] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.0[v as usize]
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(e)
    }

    fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a = a.checked_sub(b)?;
        }
        Some(Monomial(e))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in Var::ALL {
            match self.exp(v) {
                0 => {}
                1 => write!(f, "{}", v.name())?,
                e => write!(f, "{}^{e}", v.name())?,
            }
        }
        Ok(())
    }
}

/// Sparse polynomial with rational coefficients. Zero coefficients are never
/// stored, so structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = MultiPoly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn int(n: i64) -> Self {
        MultiPoly::constant(Rational::from_integer(BigInt::from(n)))
    }

    pub fn var(v: Var) -> Self {
        MultiPoly::monomial(Monomial::var(v), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut p = MultiPoly::zero();
        p.add_term(m, c);
        p
    }

    /// `Σ coeffs[k] v^k`.
    pub fn from_univariate(v: Var, coeffs: &[Rational]) -> Self {
        let mut p = MultiPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            let mut m = Monomial::one();
            m.0[v as usize] = k as u16;
            p.add_term(m, c.clone());
        }
        p
    }

    pub fn from_int_univariate(v: Var, coeffs: &[i64]) -> Self {
        let cs: Vec<Rational> = coeffs
            .iter()
            .map(|&c| Rational::from_integer(BigInt::from(c)))
            .collect();
        MultiPoly::from_univariate(v, &cs)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::one())
    }

    /// The constant value, if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading().map(|(m, _)| m.degree())
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    fn mul_term(&self, m: &Monomial, c: &Rational) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut out = MultiPoly::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn derivative(&self, v: Var) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e > 0 {
                let mut d = *m;
                d.0[v as usize] -= 1;
                out.add_term(d, c * Rational::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    /// Replaces `v` by the polynomial `q`.
    pub fn substitute(&self, v: Var, q: &MultiPoly) -> MultiPoly {
        let mut powers = vec![MultiPoly::one()];
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * q;
                powers.push(next);
            }
            let mut rest = *m;
            rest.0[v as usize] = 0;
            out = &out + &powers[e].mul_term(&rest, c);
        }
        out
    }

    pub fn substitute_scalar(&self, v: Var, value: &Rational) -> MultiPoly {
        self.substitute(v, &MultiPoly::constant(value.clone()))
    }

    /// Evaluates every variable; variables missing from `point` count as zero.
    pub fn evaluate(&self, point: &[(Var, Rational)]) -> Rational {
        let mut vals = vec![Rational::zero(); NVARS];
        for (v, r) in point {
            vals[*v as usize] = r.clone();
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for v in Var::ALL {
                let e = m.exp(v);
                if e > 0 {
                    term *= num_traits::pow(vals[v as usize].clone(), e as usize);
                }
            }
            acc += term;
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    ///
    /// Long division by leading terms in graded-lex order; a remainder whose
    /// leading monomial is not divisible by that of `d` proves non-divisibility.
    pub fn exact_div(&self, d: &MultiPoly) -> Option<MultiPoly> {
        let (dm, dc) = d.leading()?;
        let (dm, dc) = (*dm, dc.clone());
        if d.terms.len() == 1 {
            let mut q = MultiPoly::zero();
            for (m, c) in &self.terms {
                q.terms.insert(m.checked_div(&dm)?, c / &dc);
            }
            return Some(q);
        }
        let mut rem = self.clone();
        let mut q = MultiPoly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.checked_div(&dm)?;
            let qc = rc / &dc;
            rem = &rem - &d.mul_term(&qm, &qc);
            q.add_term(qm, qc);
        }
        Some(q)
    }

    /// Coefficients in `v`, lowest degree first, if `v` is the only variable.
    pub fn to_univariate(&self, v: Var) -> Option<Vec<Rational>> {
        let mut out: Vec<Rational> = Vec::new();
        for (m, c) in &self.terms {
            if Var::ALL.iter().any(|&o| o != v && m.exp(o) > 0) {
                return None;
            }
            let e = m.exp(v) as usize;
            if out.len() <= e {
                out.resize(e + 1, Rational::zero());
            }
            out[e] = c.clone();
        }
        Some(out)
    }

    /// Integer coefficients in `v`, if univariate with integral coefficients.
    pub fn to_int_univariate(&self, v: Var) -> Option<Vec<i128>> {
        self.to_univariate(v)?
            .iter()
            .map(|c| {
                if c.is_integer() {
                    i128::try_from(c.to_integer()).ok()
                } else {
                    None
                }
            })
            .collect()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if neg {
                f.write_str("-")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    if a.is_integer() {
                        write!(f, "{a}")?;
                    } else {
                        write!(f, "({a})")?;
                    }
                }
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                *acc.entry(m1.mul(m2)).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MultiPoly { terms: acc }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{frac, rat};

    fn t() -> MultiPoly {
        MultiPoly::var(Var::T)
    }

    #[test]
    fn display_ascending() {
        let p = MultiPoly::from_int_univariate(Var::T, &[55, 147, 53, 1]);
        assert_eq!(p.to_string(), "55+147t+53t^2+t^3");
        let q = &MultiPoly::var(Var::S) - &MultiPoly::constant(frac(1, 2)).mul(t());
        assert_eq!(q.to_string(), "-(1/2)t+s");
        assert_eq!(MultiPoly::zero().to_string(), "0");
    }

    #[test]
    fn calculus() {
        let p = MultiPoly::from_int_univariate(Var::T, &[4, 9, 1]);
        assert_eq!(p.derivative(Var::T), MultiPoly::from_int_univariate(Var::T, &[9, 2]));
        let q = MultiPoly::from_int_univariate(Var::T, &[1, 2, 1]);
        assert_eq!(q.evaluate(&[(Var::T, rat(1))]), rat(4));
        let b5 = MultiPoly::from_int_univariate(Var::T, &[5, 25, 12]);
        assert_eq!(b5.substitute_scalar(Var::T, &rat(1)).as_constant(), Some(rat(42)));
    }

    #[test]
    fn division() {
        let two_t = MultiPoly::int(2).mul(t());
        let p = MultiPoly::from_int_univariate(Var::T, &[0, 2, 2]);
        assert_eq!(p.exact_div(&two_t), Some(MultiPoly::from_int_univariate(Var::T, &[1, 1])));
        assert_eq!(MultiPoly::one().exact_div(&t()), None);
        // (1-t)^2 (s+t) / (1-t)
        let one_minus_t = &MultiPoly::one() - &t();
        let st = &MultiPoly::var(Var::S) + &t();
        let p = &(&one_minus_t * &one_minus_t) * &st;
        assert_eq!(p.exact_div(&one_minus_t), Some(&one_minus_t * &st));
        assert_eq!(st.exact_div(&one_minus_t), None);
    }

    #[test]
    fn monomial_order_is_graded() {
        let a = Monomial::var(Var::S);
        let b = Monomial::var(Var::T);
        let ab = a.mul(&b);
        assert!(a > b);
        assert!(ab > a && Monomial::one() < b);
    }
}
