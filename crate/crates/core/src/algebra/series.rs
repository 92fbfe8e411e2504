use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::poly::{Monomial, MultiPoly, Var, NVARS};
use super::Rational;
use crate::error::{Error, Result};

/// Power series in one variable truncated after `x^order`, with polynomial
/// coefficients. Binary operations keep the smaller of the two orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    order: usize,
    coeffs: Vec<MultiPoly>,
}

impl TruncatedSeries {
    /// Pads with zeros or truncates `coeffs` to exactly `order + 1` entries.
    pub fn new(order: usize, mut coeffs: Vec<MultiPoly>) -> Self {
        coeffs.resize(order + 1, MultiPoly::zero());
        TruncatedSeries { order, coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries::new(order, Vec::new())
    }

    pub fn constant(c: MultiPoly, order: usize) -> Self {
        TruncatedSeries::new(order, vec![c])
    }

    pub fn one(order: usize) -> Self {
        TruncatedSeries::constant(MultiPoly::one(), order)
    }

    /// The series variable itself.
    pub fn x(order: usize) -> Self {
        TruncatedSeries::monomial(MultiPoly::one(), 1, order)
    }

    /// `c x^k`.
    pub fn monomial(c: MultiPoly, k: usize, order: usize) -> Self {
        let mut coeffs = vec![MultiPoly::zero(); order + 1];
        if k <= order {
            coeffs[k] = c;
        }
        TruncatedSeries { order, coeffs }
    }

    /// A polynomial in the series variable; terms past `order` are dropped.
    pub fn from_polys(coeffs: Vec<MultiPoly>, order: usize) -> Self {
        TruncatedSeries::new(order, coeffs)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &MultiPoly {
        &self.coeffs[n]
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        TruncatedSeries::new(order, self.coeffs[..=order].to_vec())
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let coeffs = (0..=order).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect();
        TruncatedSeries { order, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let coeffs = (0..=order).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect();
        TruncatedSeries { order, coeffs }
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let coeffs = (0..=order)
            .map(|n| {
                let mut acc = MultiPoly::zero();
                for k in 0..=n {
                    let (a, b) = (&self.coeffs[k], &other.coeffs[n - k]);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect();
        TruncatedSeries { order, coeffs }
    }

    pub fn scale(&self, c: &MultiPoly) -> Self {
        TruncatedSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        TruncatedSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(),
        }
    }

    /// Multiplies by `x^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Self {
        let mut coeffs = vec![MultiPoly::zero(); k.min(self.order + 1)];
        coeffs.extend(self.coeffs.iter().take((self.order + 1).saturating_sub(k)).cloned());
        TruncatedSeries::new(self.order, coeffs)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = TruncatedSeries::one(self.order);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    fn unit_constant(&self) -> Result<Rational> {
        match self.coeffs[0].as_constant() {
            Some(c) if !c.is_zero() => Ok(c),
            _ => Err(Error::NonInvertible(self.coeffs[0].to_string())),
        }
    }

    /// Multiplicative inverse; the constant term must be a nonzero rational.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.unit_constant()?;
        let inv0 = Rational::one() / &c0;
        let mut out: Vec<MultiPoly> = Vec::with_capacity(self.order + 1);
        out.push(MultiPoly::constant(inv0.clone()));
        for n in 1..=self.order {
            let mut acc = MultiPoly::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() && !out[n - k].is_zero() {
                    acc = &acc + &(&self.coeffs[k] * &out[n - k]);
                }
            }
            out.push(acc.scale(&-inv0.clone()));
        }
        Ok(TruncatedSeries {
            order: self.order,
            coeffs: out,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Square root of a series with constant term exactly 1, by the
    /// convolution recurrence `2 r_n = a_n - Σ_{0<k<n} r_k r_{n-k}`.
    pub fn sqrt(&self) -> Result<Self> {
        if self.coeffs[0] != MultiPoly::one() {
            return Err(Error::invalid(format!(
                "square root needs constant term 1, got {}",
                self.coeffs[0]
            )));
        }
        let half = Rational::new(1.into(), 2.into());
        let mut r: Vec<MultiPoly> = vec![MultiPoly::one()];
        for n in 1..=self.order {
            let mut acc = self.coeffs[n].clone();
            for k in 1..n {
                if !r[k].is_zero() && !r[n - k].is_zero() {
                    acc = &acc - &(&r[k] * &r[n - k]);
                }
            }
            r.push(acc.scale(&half));
        }
        Ok(TruncatedSeries {
            order: self.order,
            coeffs: r,
        })
    }

    /// Divides by `c x^k` where the division is known to be exact.
    ///
    /// The result has order `order - k`, since the top `k` coefficients of the
    /// quotient are not determined by `self`.
    pub fn exact_div(&self, k: usize, c: &MultiPoly) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::InexactDivision {
                power: 0,
                detail: "division by zero".into(),
            });
        }
        if k > self.order {
            return Err(Error::invalid(format!(
                "cannot divide a series of order {} by x^{k}",
                self.order
            )));
        }
        for (i, a) in self.coeffs[..k].iter().enumerate() {
            if !a.is_zero() {
                return Err(Error::InexactDivision {
                    power: i,
                    detail: format!("coefficient {a} should vanish"),
                });
            }
        }
        let coeffs = self.coeffs[k..]
            .iter()
            .enumerate()
            .map(|(i, a)| {
                a.exact_div(c).ok_or_else(|| Error::InexactDivision {
                    power: i + k,
                    detail: format!("{a} is not divisible by {c}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TruncatedSeries {
            order: self.order - k,
            coeffs,
        })
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> Self {
        TruncatedSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn substitute_scalar(&self, v: Var, value: &Rational) -> Self {
        self.map_coeffs(|c| c.substitute_scalar(v, value))
    }

    /// Substitutes series for the polynomial variables and for the series
    /// variable itself, simultaneously.
    ///
    /// The series substituted for the series variable must have zero constant
    /// term, so that only finitely many terms of `self` contribute to each
    /// coefficient. Unmapped polynomial variables are left in place.
    pub fn compose(&self, subs: &Subs) -> Result<Self> {
        let z = &subs.series_var;
        if !z.coeffs[0].is_zero() {
            return Err(Error::CompositionDivergence(z.coeffs[0].to_string()));
        }
        let order = subs
            .vars
            .values()
            .map(|s| s.order)
            .chain([self.order, z.order])
            .min()
            .unwrap();
        let mut powers: HashMap<(Var, u16), TruncatedSeries> = HashMap::new();
        let mut out = TruncatedSeries::zero(order);
        // z = x·zq; keep zq^m so each term can be truncated to its own order.
        let zq = TruncatedSeries::new(order.saturating_sub(1), z.coeffs[1..].to_vec());
        let mut zq_pow = TruncatedSeries::one(order);
        for m in 0..=order {
            let g = &self.coeffs[m];
            if !g.is_zero() {
                let sub_order = order - m;
                let mut gm = TruncatedSeries::zero(sub_order);
                for (mono, c) in g.terms() {
                    let mut term = TruncatedSeries::constant(MultiPoly::one(), sub_order);
                    let mut rest = Monomial::one();
                    for v in Var::ALL {
                        let e = mono.exp(v);
                        if e == 0 {
                            continue;
                        }
                        match subs.vars.get(&v) {
                            Some(series) => {
                                let p = power_of(&mut powers, v, e, series, order);
                                term = term.mul(&p.truncate(sub_order));
                            }
                            None => rest.0[v as usize] = e,
                        }
                    }
                    gm = gm.add(&term.scale(&MultiPoly::monomial(rest, c.clone())));
                }
                let contribution = gm.mul(&zq_pow.truncate(sub_order));
                for i in m..=order {
                    out.coeffs[i] = &out.coeffs[i] + &contribution.coeffs[i - m];
                }
            }
            if m < order {
                zq_pow = zq_pow.truncate(order - m - 1).mul(&zq);
            }
        }
        Ok(out)
    }

    /// Rows `n: poly` for every coefficient.
    pub fn rows(&self) -> Vec<(usize, String)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| (n, c.to_string()))
            .collect()
    }

    pub fn to_json(&self) -> SeriesJson {
        let mut coeffs = Vec::new();
        for (n, c) in self.coeffs.iter().enumerate() {
            for (m, r) in c.terms() {
                let mut exps = Vec::with_capacity(NVARS + 1);
                exps.push(n as u32);
                exps.extend(m.0.iter().map(|&e| e as u32));
                coeffs.push((exps, r.numer().to_string(), r.denom().to_string()));
            }
        }
        SeriesJson {
            order: self.order,
            vars: std::iter::once("x".to_string())
                .chain(Var::ALL.iter().map(|v| v.name().to_string()))
                .collect(),
            coeffs,
        }
    }
}

fn power_of(
    cache: &mut HashMap<(Var, u16), TruncatedSeries>,
    v: Var,
    e: u16,
    base: &TruncatedSeries,
    order: usize,
) -> TruncatedSeries {
    if let Some(p) = cache.get(&(v, e)) {
        return p.clone();
    }
    let p = if e == 1 {
        base.truncate(order)
    } else {
        power_of(cache, v, e - 1, base, order).mul(base)
    };
    cache.insert((v, e), p.clone());
    p
}

/// Substitutions for [`TruncatedSeries::compose`].
#[derive(Clone, Debug)]
pub struct Subs {
    pub series_var: TruncatedSeries,
    pub vars: HashMap<Var, TruncatedSeries>,
}

impl Subs {
    pub fn new(series_var: TruncatedSeries) -> Self {
        Subs {
            series_var,
            vars: HashMap::new(),
        }
    }

    pub fn with(mut self, v: Var, s: TruncatedSeries) -> Self {
        self.vars.insert(v, s);
        self
    }
}

/// Serialized form: each entry is `[exponents, numerator, denominator]` with
/// exponents listed for `x, s, t, u, v, w` in that order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub order: usize,
    pub vars: Vec<String>,
    pub coeffs: Vec<(Vec<u32>, String, String)>,
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, c) in self.coeffs.iter().enumerate() {
            writeln!(f, "{n}: {c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{frac, rat};

    const N: usize = 10;

    fn t() -> MultiPoly {
        MultiPoly::var(Var::T)
    }

    fn ints(s: &TruncatedSeries) -> Vec<i128> {
        s.coeffs()
            .iter()
            .map(|c| {
                let r = c.as_constant().expect("constant coefficient");
                assert!(r.is_integer());
                i128::try_from(r.to_integer()).unwrap()
            })
            .collect()
    }

    fn poly_series(cs: &[i64]) -> TruncatedSeries {
        TruncatedSeries::from_polys(cs.iter().map(|&c| MultiPoly::int(c)).collect(), N)
    }

    #[test]
    fn geometric() {
        let one = TruncatedSeries::one(N);
        let q = one.div(&poly_series(&[1, -1])).unwrap();
        assert_eq!(ints(&q), vec![1; N + 1]);
        let p = poly_series(&[1, 1]).mul(&poly_series(&[1, -1]));
        assert_eq!(p, poly_series(&[1, 0, -1]));
    }

    #[test]
    fn rational_function_with_t() {
        // (1-x) / (1 - 2x + (1-t)x^3)
        let den = TruncatedSeries::from_polys(
            vec![MultiPoly::one(), MultiPoly::int(-2), MultiPoly::zero(), &MultiPoly::one() - &t()],
            N,
        );
        let b = poly_series(&[1, -1]).div(&den).unwrap();
        assert_eq!(b.coeff(3), &MultiPoly::from_int_univariate(Var::T, &[3, 1]));
    }

    #[test]
    fn non_unit_division_fails() {
        let den = TruncatedSeries::constant(t(), N);
        assert!(matches!(
            TruncatedSeries::one(N).div(&den),
            Err(Error::NonInvertible(_))
        ));
        assert!(TruncatedSeries::one(N).div(&TruncatedSeries::x(N)).is_err());
    }

    #[test]
    fn square_roots() {
        let r = poly_series(&[1, -4]).sqrt().unwrap();
        assert_eq!(&ints(&r)[..5], &[1, -2, -2, -4, -10]);
        assert_eq!(r.mul(&r), poly_series(&[1, -4]));
        assert_eq!(TruncatedSeries::one(N).sqrt().unwrap(), TruncatedSeries::one(N));
        // 1 - 4x + 4(1-t)x^2 at t = 0 is (1-2x)^2
        let rad = TruncatedSeries::from_polys(
            vec![MultiPoly::one(), MultiPoly::int(-4), (&MultiPoly::one() - &t()).scale(&rat(4))],
            N,
        );
        let at0 = rad.sqrt().unwrap().substitute_scalar(Var::T, &rat(0));
        assert_eq!(at0, poly_series(&[1, -2]));
        assert!(poly_series(&[2, 1]).sqrt().is_err());
    }

    #[test]
    fn exact_division() {
        let a = TruncatedSeries::from_polys(
            vec![MultiPoly::zero(), t().scale(&rat(2)), (&t() * &t()).scale(&rat(2))],
            N,
        );
        let q = a.exact_div(1, &t().scale(&rat(2))).unwrap();
        assert_eq!(q.coeff(0), &MultiPoly::one());
        assert_eq!(q.coeff(1), &t());
        assert_eq!(q.order(), N - 1);
        let bad = TruncatedSeries::monomial(MultiPoly::one(), 2, N);
        assert!(matches!(bad.exact_div(1, &t()), Err(Error::InexactDivision { power: 2, .. })));
        assert!(matches!(
            TruncatedSeries::one(N).exact_div(1, &MultiPoly::one()),
            Err(Error::InexactDivision { power: 0, .. })
        ));
    }

    #[test]
    fn composition() {
        // z composed with x/(1-x)
        let z = TruncatedSeries::x(N);
        let xs = TruncatedSeries::x(N).div(&poly_series(&[1, -1])).unwrap();
        let got = z.compose(&Subs::new(xs)).unwrap();
        let mut want = vec![1i128; N + 1];
        want[0] = 0;
        assert_eq!(ints(&got), want);
        // 1/(1-z) with z = x(1+x) gives Fibonacci numbers
        let geo = TruncatedSeries::one(N).div(&poly_series(&[1, -1])).unwrap();
        let got = geo.compose(&Subs::new(poly_series(&[0, 1, 1]))).unwrap();
        assert_eq!(&ints(&got)[..6], &[1, 1, 2, 3, 5, 8]);
        assert!(matches!(
            geo.compose(&Subs::new(poly_series(&[1, 1]))),
            Err(Error::CompositionDivergence(_))
        ));
    }

    #[test]
    fn composition_substitutes_polynomial_variables() {
        // (1 + t z) with t -> 1 + x, z -> x gives 1 + x + x^2
        let outer = TruncatedSeries::from_polys(vec![MultiPoly::one(), t()], N);
        let subs = Subs::new(TruncatedSeries::x(N)).with(Var::T, poly_series(&[1, 1]));
        assert_eq!(outer.compose(&subs).unwrap(), poly_series(&[1, 1, 1]));
        // unmapped variables survive
        let subs = Subs::new(TruncatedSeries::x(N).scale_rational(&frac(1, 2)));
        let got = outer.compose(&subs).unwrap();
        assert_eq!(got.coeff(1), &t().scale(&frac(1, 2)));
    }

    #[test]
    fn json_layout() {
        let s = TruncatedSeries::from_polys(vec![MultiPoly::one(), t().scale(&frac(3, 2))], 1);
        let j = s.to_json();
        assert_eq!(j.vars, vec!["x", "s", "t", "u", "v", "w"]);
        assert_eq!(j.coeffs[1], (vec![1, 0, 1, 0, 0, 0], "3".to_string(), "2".to_string()));
        assert_eq!(s.to_string(), "0: 1\n1: (3/2)t\n");
    }
}
