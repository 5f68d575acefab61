//! Exact scalar and polynomial arithmetic.
//!
//! Everything downstream computes over [`Rational`] (arbitrary precision,
//! always in lowest terms) and over polynomials in the symbolic matrix size
//! `N`: [`Poly`] for ordinary polynomials and [`LaurentPoly`] once negative
//! powers appear after rescaling. No floating point is used here.

mod laurent;
mod linalg;
mod multipoly;
mod poly;

pub use laurent::LaurentPoly;
pub use linalg::determinant;
pub use multipoly::MultiPoly;
pub use poly::{rising_factorial_poly, Poly};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Parses `"p/q"` or `"p"` (optional sign, surrounding whitespace ignored).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Comma-separated list of rationals, e.g. `"1,2,-1/3"`.
pub fn parse_rational_list(text: &str) -> Result<Vec<Rational>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(parse_rational)
        .collect()
}

/// `"p/q"` or `"p"`.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `(2n-1)!! = 1·3·5···(2n-1)`, with `(-1)!! = 1`.
pub fn odd_double_factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(2 * k - 1))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Rising factorial `(x)_n = x (x+1) ··· (x+n-1)`.
pub fn rising_factorial(x: &Rational, n: usize) -> Rational {
    let mut acc = Rational::one();
    let mut term = x.clone();
    for _ in 0..n {
        acc *= &term;
        term += Rational::one();
    }
    acc
}

/// `Γ(x) / Γ(x + d)` for integer shift `d`, as an exact rational.
///
/// Requires the Gamma arguments to avoid the poles that the product form
/// would divide by; callers guarantee `x > 0` and `x + d > 0`.
pub fn gamma_ratio(x: &Rational, d: i64) -> Rational {
    if d >= 0 {
        rising_factorial(x, d as usize).recip()
    } else {
        let start = x + rat(d);
        rising_factorial(&start, (-d) as usize)
    }
}

pub fn pow(base: &Rational, exp: usize) -> Rational {
    num_traits::pow(base.clone(), exp)
}

/// `(-1)^k`.
pub fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub(crate) fn is_negative(r: &Rational) -> bool {
    r.is_negative()
}
