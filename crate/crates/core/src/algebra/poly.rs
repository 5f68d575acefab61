use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{parse_rational, rat, Rational};
use crate::error::{Error, Result};

/// Polynomial in the formal matrix size `N` with rational coefficients.
///
/// Coefficients are stored in ascending degree; the last stored coefficient
/// is never zero, so the zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The indeterminate `N`.
    pub fn n() -> Self {
        Poly::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Poly::from_coeffs(coeffs)
    }

    /// `N + c`.
    pub fn linear(c: Rational) -> Self {
        Poly::from_coeffs(vec![c, Rational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// Ascending coefficients, without trailing zeros.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, degree: usize) -> Rational {
        self.coeffs.get(degree).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, n: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * n + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, exp: usize) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// `p(-N)`.
    pub fn reflect(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// True when only even powers of `N` occur.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(|c| c.is_zero())
    }

    pub fn is_odd(&self) -> bool {
        self.coeffs.iter().step_by(2).all(|c| c.is_zero())
    }

    /// Iterator over nonzero `(degree, coefficient)` pairs.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (usize, &Rational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("polynomial serializes")
    }
}

/// `∏_{m=0}^{count-1} (N + offset + m)`.
pub fn rising_factorial_poly(offset: &Rational, count: usize) -> Poly {
    let mut acc = Poly::one();
    let mut shift = offset.clone();
    for _ in 0..count {
        acc = &acc * &Poly::linear(shift.clone());
        shift += Rational::one();
    }
    acc
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs(
            (0..len)
                .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident $m:ident $tra:ident $ma:ident),*) => {$(
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a $ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &$ty) -> $ty {
                (&self).$m(rhs)
            }
        }
        impl $tra<&$ty> for $ty {
            fn $ma(&mut self, rhs: &$ty) {
                *self = (&*self).$m(rhs);
            }
        }
        impl $tra<$ty> for $ty {
            fn $ma(&mut self, rhs: $ty) {
                *self = (&*self).$m(&rhs);
            }
        }
    )*};
}
pub(crate) use forward_owned;

forward_owned!(Poly, Add add AddAssign add_assign, Sub sub SubAssign sub_assign, Mul mul MulAssign mul_assign);

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::zero(), |a, b| a + b)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_terms(
            self.terms().rev().map(|(k, c)| (k as i64, c)),
        ))
    }
}

/// Renders `(exponent, coefficient)` pairs, highest exponent first:
/// `5*N^4 + 10*N^2`, `3/4 + 3/4*N^-2`, `-N + 1/2`.
pub(crate) fn render_terms<'a>(terms: impl Iterator<Item = (i64, &'a Rational)>) -> String {
    let mut out = String::new();
    for (exp, c) in terms {
        let negative = super::is_negative(c);
        let mag = if negative { -c } else { c.clone() };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let power = match exp {
            0 => String::new(),
            1 => "N".to_string(),
            e => format!("N^{e}"),
        };
        if power.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&power);
        } else {
            out.push_str(&format!("{mag}*{power}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Serialize, Deserialize)]
pub(crate) struct PolyJson {
    pub var: String,
    pub coeffs: BTreeMap<String, String>,
}

impl PolyJson {
    pub(crate) fn from_terms<'a>(terms: impl Iterator<Item = (i64, &'a Rational)>) -> Self {
        PolyJson {
            var: "N".into(),
            coeffs: terms.map(|(e, c)| (e.to_string(), c.to_string())).collect(),
        }
    }

    pub(crate) fn into_terms(self) -> Result<Vec<(i64, Rational)>> {
        if self.var != "N" {
            return Err(Error::Parse(format!("unknown variable {:?}", self.var)));
        }
        self.coeffs
            .into_iter()
            .map(|(e, c)| {
                let e: i64 = e
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent {e:?}")))?;
                Ok((e, parse_rational(&c)?))
            })
            .collect()
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson::from_terms(self.terms().map(|(k, c)| (k as i64, c))).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms = PolyJson::deserialize(d)?
            .into_terms()
            .map_err(serde::de::Error::custom)?;
        let mut p = Poly::zero();
        for (e, c) in terms {
            if e < 0 {
                return Err(serde::de::Error::custom("negative exponent in polynomial"));
            }
            p += Poly::monomial(c, e as usize);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;
    use proptest::prelude::*;

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((-20i64..20, 1i64..6), 0..6).prop_map(|cs| {
            Poly::from_coeffs(cs.into_iter().map(|(n, d)| ratio(n, d)).collect())
        })
    }

    #[test]
    fn eval_and_render() {
        let p = Poly::from_ints(&[2, 0, 1]);
        assert_eq!(p.eval(&rat(2)), rat(6));
        assert_eq!(Poly::zero().eval(&rat(7)), rat(0));
        assert_eq!(Poly::from_ints(&[0, 0, 10, 0, 5]).to_string(), "5*N^4 + 10*N^2");
        assert_eq!(Poly::from_ints(&[1, -1]).to_string(), "-N + 1");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn rising_factorials() {
        assert_eq!(rising_factorial_poly(&rat(0), 1), Poly::n());
        assert_eq!(
            rising_factorial_poly(&rat(-1), 2),
            Poly::from_ints(&[0, -1, 1])
        );
        assert_eq!(
            rising_factorial_poly(&ratio(1, 2), 2),
            Poly::from_coeffs(vec![ratio(3, 4), rat(2), rat(1)])
        );
    }

    #[test]
    fn json_round_trip() {
        let p = Poly::from_coeffs(vec![ratio(-1, 3), rat(0), rat(5)]);
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, r#"{"var":"N","coeffs":{"0":"-1/3","2":"5"}}"#);
        let back: Poly = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a - &a), &Poly::zero());
        }

        #[test]
        fn eval_is_homomorphism(a in arb_poly(), b in arb_poly(), n in -9i64..9, d in 1i64..5) {
            let x = ratio(n, d);
            prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
            prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
        }

        #[test]
        fn degree_is_additive(a in arb_poly(), b in arb_poly()) {
            if let (Some(da), Some(db)) = (a.degree(), b.degree()) {
                prop_assert_eq!((&a * &b).degree(), Some(da + db));
            }
        }
    }
}
