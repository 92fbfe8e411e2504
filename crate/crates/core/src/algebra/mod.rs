//! Exact arithmetic: rationals, sparse multivariate polynomials in the markers
//! `s, t, u, v, w`, and truncated power series in one series variable whose
//! coefficients are such polynomials.

mod poly;
mod series;

pub use poly::{Monomial, MultiPoly, Var, NVARS};
pub use series::{SeriesJson, Subs, TruncatedSeries};

use num_bigint::BigInt;

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}
