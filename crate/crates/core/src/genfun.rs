//! Generating functions for big descents over pattern classes, the auxiliary
//! path generating functions they are built from, and closed counting formulas.
//!
//! Most generating functions come with two independent routes: a closed form
//! evaluated with square roots and exact division, and a fixed-point iteration
//! of the functional equation the closed form solves.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{rat, MultiPoly, Rational, Subs, TruncatedSeries, Var};
use crate::error::{Error, Result};
use crate::perm::{enumerate_avoiders, statistic, PatternSet, StatName};

pub const DEFAULT_ORDER: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GfId {
    B132,
    B321,
    B123,
    Bgrave123,
    B123_132,
    B132_213,
    B231_321,
    B123_321,
    V,
    What,
    W,
    G,
    Gtilde,
    F,
    RRun(usize),
    W1Words,
}

impl GfId {
    pub const NAMED: [GfId; 15] = [
        GfId::B132,
        GfId::B321,
        GfId::B123,
        GfId::Bgrave123,
        GfId::B123_132,
        GfId::B132_213,
        GfId::B231_321,
        GfId::B123_321,
        GfId::V,
        GfId::What,
        GfId::W,
        GfId::G,
        GfId::Gtilde,
        GfId::F,
        GfId::W1Words,
    ];

    pub fn has_functional_route(self) -> bool {
        matches!(
            self,
            GfId::B132
                | GfId::B321
                | GfId::B123
                | GfId::Bgrave123
                | GfId::B123_132
                | GfId::B132_213
                | GfId::V
                | GfId::What
                | GfId::W
                | GfId::G
                | GfId::Gtilde
                | GfId::W1Words
        )
    }

    /// Parses an id; `R_run` takes its parameter separately via `r`.
    pub fn parse_with(s: &str, r: Option<usize>) -> Result<GfId> {
        let s = s.trim();
        if s == "R_run" {
            let r = r.ok_or_else(|| Error::invalid("R_run needs a run length r"))?;
            return Ok(GfId::RRun(r));
        }
        if let Some(rest) = s.strip_prefix("R_run(").and_then(|x| x.strip_suffix(')')) {
            let r = rest
                .parse()
                .map_err(|_| Error::invalid(format!("bad run length in {s:?}")))?;
            return Ok(GfId::RRun(r));
        }
        GfId::NAMED
            .into_iter()
            .find(|g| g.to_string() == s)
            .ok_or_else(|| Error::invalid(format!("unknown generating function {s:?}")))
    }
}

impl fmt::Display for GfId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GfId::B132 => "B132",
            GfId::B321 => "B321",
            GfId::B123 => "B123",
            GfId::Bgrave123 => "Bgrave123",
            GfId::B123_132 => "B123_132",
            GfId::B132_213 => "B132_213",
            GfId::B231_321 => "B231_321",
            GfId::B123_321 => "B123_321",
            GfId::V => "V",
            GfId::What => "What",
            GfId::W => "W",
            GfId::G => "G",
            GfId::Gtilde => "Gtilde",
            GfId::F => "F",
            GfId::RRun(r) => return write!(f, "R_run({r})"),
            GfId::W1Words => "W1_words",
        };
        f.write_str(s)
    }
}

impl FromStr for GfId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GfId::parse_with(s, None)
    }
}

fn t() -> MultiPoly {
    MultiPoly::var(Var::T)
}

fn s() -> MultiPoly {
    MultiPoly::var(Var::S)
}

fn int(n: i64) -> MultiPoly {
    MultiPoly::int(n)
}

fn one_minus(p: &MultiPoly) -> MultiPoly {
    &MultiPoly::one() - p
}

/// A polynomial in the series variable with the given coefficients.
fn ser(coeffs: Vec<MultiPoly>, order: usize) -> TruncatedSeries {
    TruncatedSeries::from_polys(coeffs, order)
}

/// `1 - 4x + 4(1-t)x^2`, the radicand shared by the 321 family.
fn radicand_321(order: usize) -> TruncatedSeries {
    ser(vec![int(1), int(-4), one_minus(&t()).scale(&rat(4))], order)
}

/// `1 - 2(1+t)x + (1-t)^2 x^2`, the radicand of the 123 family.
fn radicand_123(order: usize) -> TruncatedSeries {
    let omt = one_minus(&t());
    ser(
        vec![int(1), (&int(1) + &t()).scale(&rat(-2)), &omt * &omt],
        order,
    )
}

/// Closed-form expansion through `x^order`.
pub fn expand(id: GfId, order: usize) -> Result<TruncatedSeries> {
    // Exact division by x loses one order; work one order higher.
    let n1 = order + 1;
    let omt = one_minus(&t());
    let out = match id {
        GfId::B132 => {
            let rad = ser(
                vec![
                    int(1),
                    int(-4),
                    omt.scale(&rat(6)),
                    (&omt * &omt).scale(&rat(-4)),
                    &omt * &omt,
                ],
                n1,
            );
            let num = ser(
                vec![int(1), omt.scale(&rat(-2)), &omt * &one_minus(&t().scale(&rat(2)))],
                n1,
            )
            .sub(&rad.sqrt()?);
            num.div(&ser(vec![int(1), -&omt], n1))?
                .exact_div(1, &t().scale(&rat(2)))?
        }
        GfId::B321 => {
            let den = ser(vec![int(1), MultiPoly::zero(), omt.scale(&rat(-2))], order)
                .add(&radicand_321(order).sqrt()?);
            TruncatedSeries::constant(int(2), order).div(&den)?
        }
        GfId::V => {
            let num = TruncatedSeries::one(n1).sub(&radicand_321(n1).sqrt()?);
            num.div(&ser(vec![int(1), -&omt], n1))?.exact_div(1, &int(2))?
        }
        GfId::What => {
            let half = TruncatedSeries::one(order)
                .sub(&radicand_321(order).sqrt()?)
                .scale_rational(&Rational::new(1.into(), 2.into()));
            let corr = &t() * &(&s() - &int(1));
            half.add(&TruncatedSeries::monomial(corr, 2, order))
        }
        GfId::W => {
            let lin = (&t() * &one_minus(&s())).scale(&rat(2));
            let den = ser(vec![int(1), MultiPoly::zero(), lin], order).add(&radicand_321(order).sqrt()?);
            TruncatedSeries::constant(int(2), order).div(&den)?
        }
        GfId::B123 => {
            let t2 = &t() * &t();
            let poly = ser(vec![int(1), one_minus(&t2).scale(&rat(-2)), &omt * &omt], n1);
            let root = ser(vec![int(1), -&omt], n1).mul(&radicand_123(n1).sqrt()?);
            poly.sub(&root).exact_div(1, &t2.scale(&rat(2)))?
        }
        GfId::Bgrave123 => {
            let lin = ser(vec![int(1), -&omt], n1);
            lin.sub(&radicand_123(n1).sqrt()?)
                .exact_div(1, &t().scale(&rat(2)))?
        }
        GfId::B123_132 | GfId::B132_213 => {
            let num = ser(vec![int(1), int(-1), omt.clone(), -&(&omt * &omt)], order);
            num.div(&den_123_132(order))?
        }
        GfId::W1Words => {
            let num = ser(vec![MultiPoly::zero(), int(1), MultiPoly::zero(), -&omt], order);
            num.div(&den_123_132(order))?
        }
        GfId::B231_321 => {
            let den = ser(vec![int(1), int(-2), MultiPoly::zero(), omt], order);
            ser(vec![int(1), int(-1)], order).div(&den)?
        }
        GfId::B123_321 => ser(
            vec![
                int(1),
                int(1),
                int(2),
                MultiPoly::from_int_univariate(Var::T, &[2, 2]),
                MultiPoly::from_int_univariate(Var::T, &[1, 2, 1]),
            ],
            order,
        ),
        GfId::G => g_closed(order)?,
        GfId::Gtilde => {
            let g = g_closed(n1)?;
            g.sub(&TruncatedSeries::one(n1)).exact_div(1, &s())?
        }
        GfId::F => f_pipeline(&MultiPoly::var(Var::U), &MultiPoly::var(Var::V), &MultiPoly::var(Var::W), order)?,
        GfId::RRun(r) => r_run(r, order)?,
    };
    Ok(out.truncate(order))
}

fn den_123_132(order: usize) -> TruncatedSeries {
    let omt = one_minus(&t());
    ser(vec![int(1), int(-2), omt.clone(), &t() * &omt], order)
}

/// `G(s, t, z)` with `z` as the series variable.
fn g_closed(order: usize) -> Result<TruncatedSeries> {
    let n1 = order + 1;
    let one_s = &int(1) + &s();
    let lin = ser(vec![int(1), -&(&one_s - &t().scale(&rat(2)))], n1);
    let quad = &(&one_s * &one_s) - &(&s() * &t()).scale(&rat(4));
    let rad = ser(vec![int(1), one_s.scale(&rat(-2)), quad], n1);
    lin.sub(&rad.sqrt()?).exact_div(1, &t().scale(&rat(2)))
}

/// Generating function for binary words by maximal zero-runs of length at
/// least `r`, valid for `r >= 2`.
fn r_run(r: usize, order: usize) -> Result<TruncatedSeries> {
    if r < 2 {
        return Err(Error::invalid(format!("R_run needs r >= 2, got {r}")));
    }
    let one_minus_x = ser(vec![int(1), int(-1)], order);
    let a = TruncatedSeries::one(order)
        .sub(&TruncatedSeries::monomial(one_minus(&t()), r, order))
        .div(&one_minus_x)?;
    a.div(&TruncatedSeries::one(order).sub(&a.shift(1)))
}

/// `F(u, v, w, x)` obtained from `G` by substituting series for `s`, `t`, `z`.
///
/// With `y = ux/(1-x)` and `a = 1 + y(1+v+y)`, the substitution is
/// `s = y(1+y)/a`, `t = (1+y)(v+y)/a`, `z = a x`, and
/// `F = (w+y)(G - 1)/u + 1/(1-x)`.
pub fn f_pipeline(u: &MultiPoly, v: &MultiPoly, w: &MultiPoly, order: usize) -> Result<TruncatedSeries> {
    let one = TruncatedSeries::one(order);
    let one_minus_x = ser(vec![int(1), int(-1)], order);
    let y = TruncatedSeries::x(order).scale(u).div(&one_minus_x)?;
    let one_y = one.add(&y);
    let v_y = y.add(&TruncatedSeries::constant(v.clone(), order));
    let a = one.add(&y.mul(&one_y.add(&TruncatedSeries::constant(v.clone(), order))));
    let s_sub = y.mul(&one_y).div(&a)?;
    let t_sub = one_y.mul(&v_y).div(&a)?;
    let z_sub = a.shift(1);
    let g = g_closed(order)?;
    let subs = Subs::new(z_sub).with(Var::S, s_sub).with(Var::T, t_sub);
    let g_sub = g.compose(&subs)?;
    let w_y = y.add(&TruncatedSeries::constant(w.clone(), order));
    let body = w_y.mul(&g_sub.sub(&one)).exact_div(0, u)?;
    body.add(&one.div(&one_minus_x)?).truncate(order).pipe(Ok)
}

trait Pipe: Sized {
    fn pipe<R>(self, f: impl FnOnce(Self) -> R) -> R {
        f(self)
    }
}

impl Pipe for TruncatedSeries {}

/// Iterates `step` from `start` until the state stops changing.
///
/// Every right-hand side multiplies the unknowns by the series variable, so
/// iteration `k` fixes the coefficient of `x^k`; `order + 2` rounds suffice
/// and the cap only guards against a transcription error.
fn fixed_point<S: PartialEq + Clone>(
    id: GfId,
    order: usize,
    start: S,
    step: impl Fn(&S) -> Result<S>,
) -> Result<S> {
    let mut cur = start;
    for _ in 0..2 * order + 5 {
        let next = step(&cur)?;
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
    Err(Error::Divergence {
        id: id.to_string(),
        order,
    })
}

fn v_functional(order: usize) -> Result<TruncatedSeries> {
    // V = 1 + x(1 + (t-1)x) V^2
    let k = ser(vec![MultiPoly::zero(), int(1), &t() - &int(1)], order);
    let one = TruncatedSeries::one(order);
    fixed_point(GfId::V, order, one.clone(), |v| Ok(one.add(&k.mul(&v.mul(v)))))
}

fn what_from_v(v: &TruncatedSeries, order: usize) -> TruncatedSeries {
    // x + stx^2 + tx^2(V-1) + x(V-1-xV)
    let one = TruncatedSeries::one(order);
    let x = TruncatedSeries::x(order);
    let vm1 = v.sub(&one);
    x.add(&TruncatedSeries::monomial(&s() * &t(), 2, order))
        .add(&vm1.shift(2).scale(&t()))
        .add(&vm1.sub(&v.shift(1)).shift(1))
}

fn gtilde_functional(order: usize) -> Result<TruncatedSeries> {
    // G~ = 1 + (1+s)z G~ + t s z^2 G~^2
    let one = TruncatedSeries::one(order);
    let lin = TruncatedSeries::monomial(&int(1) + &s(), 1, order);
    let quad = TruncatedSeries::monomial(&t() * &s(), 2, order);
    fixed_point(GfId::Gtilde, order, one.clone(), |g| {
        Ok(one.add(&lin.mul(g)).add(&quad.mul(&g.mul(g))))
    })
}

fn w1_functional(order: usize) -> Result<TruncatedSeries> {
    // W1 = x + W01 + W11, W0 = (1 + W0 + t W1)x, W01 = W0 x, W11 = (x + t W01 + W11)x
    let x = TruncatedSeries::x(order);
    let one = TruncatedSeries::one(order);
    let z = TruncatedSeries::zero(order);
    let tt = t();
    let (w1, ..) = fixed_point(
        GfId::W1Words,
        order,
        (z.clone(), z.clone(), z.clone(), z),
        |(w1, w0, w01, w11)| {
            Ok((
                x.add(w01).add(w11),
                one.add(w0).add(&w1.scale(&tt)).shift(1),
                w0.shift(1),
                x.add(&w01.scale(&tt)).add(w11).shift(1),
            ))
        },
    )?;
    Ok(w1)
}

/// Replaces `s^a t^b` by `t^(b-a)`, i.e. sets `s = 1/t` where that stays polynomial.
fn s_to_inverse_t(series: &TruncatedSeries) -> Result<TruncatedSeries> {
    let mut coeffs = Vec::with_capacity(series.order() + 1);
    for c in series.coeffs() {
        let mut out = MultiPoly::zero();
        for (m, r) in c.terms() {
            let (a, b) = (m.exp(Var::S), m.exp(Var::T));
            if a > b {
                return Err(Error::Internal(format!("s^{a} t^{b} has no polynomial image")));
            }
            let mut e = *m;
            e.0[Var::S as usize] = 0;
            e.0[Var::T as usize] = b - a;
            out.add_term(e, r.clone());
        }
        coeffs.push(out);
    }
    Ok(TruncatedSeries::from_polys(coeffs, series.order()))
}

/// Functional-equation route through `x^order`.
pub fn expand_functional(id: GfId, order: usize) -> Result<TruncatedSeries> {
    let one = TruncatedSeries::one(order);
    match id {
        GfId::B132 => {
            // B = 1 + Bbar + x(B-1) + tx(B-1)^2, Bbar = x(1 + Bbar + t(B - Bbar - 1))
            let zero = TruncatedSeries::zero(order);
            let (b, _) = fixed_point(id, order, (one.clone(), zero), |(b, bb)| {
                let bm1 = b.sub(&one);
                let nb = one
                    .add(bb)
                    .add(&bm1.shift(1))
                    .add(&bm1.mul(&bm1).shift(1).scale(&t()));
                let nbb = one.add(bb).add(&b.sub(bb).sub(&one).scale(&t())).shift(1);
                Ok((nb, nbb))
            })?;
            Ok(b)
        }
        GfId::V => v_functional(order),
        GfId::What => Ok(what_from_v(&v_functional(order)?, order)),
        GfId::W => {
            let what = what_from_v(&v_functional(order)?, order);
            fixed_point(id, order, one.clone(), |w| Ok(one.add(&what.mul(w))))
        }
        // sdes is marked by s and des by t, and bdes = des - sdes
        GfId::B321 => s_to_inverse_t(&expand_functional(GfId::W, order)?),
        GfId::Gtilde => gtilde_functional(order),
        GfId::G => Ok(one.add(&gtilde_functional(order)?.shift(1).scale(&s()))),
        GfId::W1Words => w1_functional(order),
        GfId::B123_132 | GfId::B132_213 => Ok(one.add(&w1_functional(order)?)),
        GfId::B123 => f_pipeline(&t(), &t(), &int(1), order),
        GfId::Bgrave123 => f_pipeline(&t(), &t(), &t(), order),
        _ => Err(Error::invalid(format!("{id} has no functional-equation route"))),
    }
}

/// Integer coefficient rows of a series in `t` alone.
pub fn t_rows(series: &TruncatedSeries) -> Result<Vec<Vec<i128>>> {
    series
        .coeffs()
        .iter()
        .map(|c| {
            c.to_int_univariate(Var::T)
                .ok_or_else(|| Error::Internal(format!("{c} is not an integer polynomial in t")))
        })
        .collect()
}

fn binom(n: i64, k: i64) -> u128 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

pub fn catalan(n: usize) -> u128 {
    binom(2 * n as i64, n as i64) / (n as u128 + 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormulaId {
    B231,
    B231Joint,
    B123,
    Narayana,
    B213_231,
    B213_312,
    B123_231,
    B132_321,
    B231_312,
    EulerianR,
    CarlitzLhsCoeff,
}

impl FormulaId {
    pub const ALL: [FormulaId; 11] = [
        FormulaId::B231,
        FormulaId::B231Joint,
        FormulaId::B123,
        FormulaId::Narayana,
        FormulaId::B213_231,
        FormulaId::B213_312,
        FormulaId::B123_231,
        FormulaId::B132_321,
        FormulaId::B231_312,
        FormulaId::EulerianR,
        FormulaId::CarlitzLhsCoeff,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FormulaId::B231 => "b231",
            FormulaId::B231Joint => "b231_joint",
            FormulaId::B123 => "b123",
            FormulaId::Narayana => "narayana",
            FormulaId::B213_231 => "b213_231",
            FormulaId::B213_312 => "b213_312",
            FormulaId::B123_231 => "b123_231",
            FormulaId::B132_321 => "b132_321",
            FormulaId::B231_312 => "b231_312",
            FormulaId::EulerianR => "eulerian_r",
            FormulaId::CarlitzLhsCoeff => "carlitz_lhs_coeff",
        }
    }

    /// Ids whose value at `(n, k)` is the count of a `k`-row entry.
    pub fn is_row_formula(self) -> bool {
        !matches!(
            self,
            FormulaId::B231Joint | FormulaId::EulerianR | FormulaId::CarlitzLhsCoeff
        )
    }
}

impl FromStr for FormulaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FormulaId::ALL
            .into_iter()
            .find(|f| f.name() == s.trim())
            .ok_or_else(|| Error::invalid(format!("unknown formula {s:?}")))
    }
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Number of avoiders of length `n` with `k` big descents, for the classes
/// with a closed product formula.
pub fn b_value(id: FormulaId, n: usize, k: usize) -> Result<u128> {
    let (ni, ki) = (n as i64, k as i64);
    if n == 0 && id.is_row_formula() {
        return Ok((k == 0) as u128);
    }
    Ok(match id {
        FormulaId::B231 => {
            if 2 * k + 1 > n {
                0
            } else {
                (1u128 << (n - 2 * k - 1)) * catalan(k) * binom(ni - 1, 2 * ki)
            }
        }
        FormulaId::B123 => {
            if n == 1 {
                (k == 0) as u128
            } else {
                2 * binom(ni + 1, ki + 2) * binom(ni - 2, ki) / (n as u128 + 1)
            }
        }
        FormulaId::Narayana => binom(ni - 1, ki) * binom(ni, ki) / (k as u128 + 1),
        FormulaId::B213_231 | FormulaId::B213_312 => binom(ni, 2 * ki + 1),
        FormulaId::B123_231 => match k {
            0 => n as u128,
            1 => binom(ni - 1, 2),
            _ => 0,
        },
        FormulaId::B132_321 => match (n, k) {
            (1, 0) => 1,
            (1, _) => 0,
            (_, 0) => 2,
            (_, 1) => binom(ni, 2) - 1,
            _ => 0,
        },
        FormulaId::B231_312 => {
            if k == 0 {
                1u128 << (n - 1)
            } else {
                0
            }
        }
        _ => return Err(Error::invalid(format!("{id} is not indexed by (n, k)"))),
    })
}

/// `b_value(id, n, k)` for `k = 0..=n`.
pub fn formula_row(id: FormulaId, n: usize) -> Result<Vec<u128>> {
    (0..=n).map(|k| b_value(id, n, k)).collect()
}

/// 231-avoiders of length `n` with `j` descents and `k` big descents.
pub fn b231_joint(n: usize, j: usize, k: usize) -> u128 {
    if n == 0 {
        return (j == 0 && k == 0) as u128;
    }
    if j < k || 2 * k + 1 > n {
        return 0;
    }
    catalan(k) * binom(n as i64 - 1, 2 * k as i64) * binom((n - 2 * k - 1) as i64, (j - k) as i64)
}

/// Polynomial with integer coefficients, lowest degree first.
pub type IntPoly = Vec<i128>;

/// Distribution of `des_r` over all of `S_n`.
///
/// For `n >= r + 1` this uses the recurrence
/// `A_n = (r+1+(n-r-1)t) A_{n-1} + t(1-t) A'_{n-1}`; smaller `n` are enumerated.
pub fn eulerian_r(n: usize, r: usize) -> IntPoly {
    let brute = |m: usize| -> IntPoly {
        let mut row = vec![0i128; m.max(1)];
        for p in enumerate_avoiders(m, &PatternSet::empty()) {
            row[statistic(&p, StatName::DesR(r as u32)) as usize] += 1;
        }
        row
    };
    if n <= r {
        return trim(brute(n));
    }
    let mut a = brute(r);
    for m in r + 1..=n {
        let mut next = vec![0i128; a.len() + 2];
        for (i, &c) in a.iter().enumerate() {
            // (r+1) c t^i + (m-r-1) c t^(i+1)
            next[i] += (r as i128 + 1) * c;
            next[i + 1] += (m as i128 - r as i128 - 1) * c;
            // t(1-t) * i c t^(i-1) = i c t^i - i c t^(i+1)
            next[i] += i as i128 * c;
            next[i + 1] -= i as i128 * c;
        }
        a = trim(next);
    }
    a
}

fn trim(mut p: IntPoly) -> IntPoly {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    p
}

/// Coefficient of `t^k` in `A^{(r)}_{n+r}(t) / ((r+1)! (1-t)^{n+1+r})`.
pub fn carlitz_lhs_coeff(n: usize, r: usize, k: usize) -> Rational {
    let a = eulerian_r(n + r, r);
    let m = (n + 1 + r) as i64;
    // (1-t)^{-m} = Σ C(m-1+i, i) t^i
    let mut acc = BigInt::zero();
    for (i, c) in a.iter().enumerate().take(k + 1) {
        let j = (k - i) as i64;
        acc += BigInt::from(*c) * BigInt::from(binom(m - 1 + j, j));
    }
    let fact: u128 = (1..=(r as u128 + 1)).product();
    Rational::new(acc, BigInt::from(fact))
}

/// `(k+1+r)^{n-1} C(k+1+r, r+1)`.
pub fn carlitz_rhs_coeff(n: usize, r: usize, k: usize) -> Rational {
    let base = BigInt::from(k + 1 + r);
    let p = num_traits::pow(base, n - 1);
    Rational::from_integer(p * BigInt::from(binom((k + 1 + r) as i64, (r + 1) as i64)))
}

pub fn carlitz_verify(n: usize, r: usize, terms: usize) -> Result<bool> {
    if n == 0 || terms == 0 {
        return Err(Error::invalid("carlitz_verify needs n >= 1 and at least one term"));
    }
    Ok((0..terms).all(|k| carlitz_lhs_coeff(n, r, k) == carlitz_rhs_coeff(n, r, k)))
}

/// Distribution of bdes over `S_n(231)` from the decomposition `π = σ n τ`,
/// independent of the product formula. Returns rows for `0..=max_n`.
pub fn b231_by_decomposition(max_n: usize) -> Vec<IntPoly> {
    // a[n]: all 231-avoiders; s[n]: those starting with n. Gluing σ n τ adds a
    // big descent after n unless τ is empty or starts with its maximum.
    let add = |x: &mut IntPoly, y: &IntPoly, shift: usize| {
        if x.len() < y.len() + shift {
            x.resize(y.len() + shift, 0);
        }
        for (i, c) in y.iter().enumerate() {
            x[i + shift] += c;
        }
    };
    let mul = |x: &IntPoly, y: &IntPoly| {
        let mut out = vec![0i128; x.len() + y.len() - 1];
        for (i, a) in x.iter().enumerate() {
            for (j, b) in y.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        out
    };
    let mut a: Vec<IntPoly> = vec![vec![1]];
    let mut s: Vec<IntPoly> = vec![vec![0]];
    for n in 1..=max_n {
        let tail = |j: usize, a: &Vec<IntPoly>, s: &Vec<IntPoly>| -> IntPoly {
            if j == 0 {
                return vec![1];
            }
            let mut out = s[j].clone();
            let rest: IntPoly = a[j].iter().zip(s[j].iter().chain(std::iter::repeat(&0))).map(|(x, y)| x - y).collect();
            add(&mut out, &rest, 1);
            out
        };
        let mut an = vec![0i128];
        for i in 0..n {
            let j = n - 1 - i;
            add(&mut an, &mul(&a[i], &tail(j, &a, &s)), 0);
        }
        let sn = tail(n - 1, &a, &s);
        a.push(trim(an));
        s.push(trim(sn));
    }
    a
}

pub fn rational_to_i128(r: &Rational) -> Option<i128> {
    if r.is_integer() {
        i128::try_from(r.to_integer()).ok()
    } else {
        None
    }
}
