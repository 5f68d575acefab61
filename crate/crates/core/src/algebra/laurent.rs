use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::{forward_owned, render_terms, PolyJson};
use super::{Poly, Rational};
use crate::error::{Error, Result};

/// Laurent polynomial in `N`: a finite sum of `c_k N^k` with `k ∈ ℤ`.
///
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        LaurentPoly::monomial(c, 0)
    }

    pub fn monomial(c: Rational, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let mut out = LaurentPoly::zero();
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, exp: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Exact value at `N = n`; fails on `n = 0` when a negative power is present.
    pub fn eval(&self, n: &Rational) -> Result<Rational> {
        if n.is_zero() && self.min_exponent().is_some_and(|e| e < 0) {
            return Err(Error::ZeroSubstitution);
        }
        Ok(self
            .terms
            .iter()
            .map(|(&e, c)| c * n.pow(e as i32))
            .fold(Rational::zero(), |a, b| a + b))
    }

    /// Multiplies by `N^k`.
    pub fn shift(&self, k: i64) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(&e, a)| (e, a * c)))
    }

    pub fn pow(&self, exp: usize) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Converts back to an ordinary polynomial when no negative powers occur.
    pub fn to_poly(&self) -> Option<Poly> {
        if self.min_exponent().is_some_and(|e| e < 0) {
            return None;
        }
        Some(
            self.terms
                .iter()
                .map(|(&e, c)| Poly::monomial(c.clone(), e as usize))
                .sum(),
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("laurent polynomial serializes")
    }
}

impl From<&Poly> for LaurentPoly {
    fn from(p: &Poly) -> Self {
        LaurentPoly::from_terms(p.terms().map(|(k, c)| (k as i64, c.clone())))
    }
}

impl From<Poly> for LaurentPoly {
    fn from(p: Poly) -> Self {
        LaurentPoly::from(&p)
    }
}

impl From<Rational> for LaurentPoly {
    fn from(c: Rational) -> Self {
        LaurentPoly::constant(c)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&a, x) in &self.terms {
            for (&b, y) in &rhs.terms {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

forward_owned!(LaurentPoly, Add add AddAssign add_assign, Sub sub SubAssign sub_assign, Mul mul MulAssign mul_assign);

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> LaurentPoly {
        iter.fold(LaurentPoly::zero(), |a, b| a + b)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_terms(self.terms().rev()))
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson::from_terms(self.terms()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms = PolyJson::deserialize(d)?
            .into_terms()
            .map_err(serde::de::Error::custom)?;
        Ok(LaurentPoly::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, ratio};
    use proptest::prelude::*;

    fn arb_laurent() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-4i64..4, -12i64..12, 1i64..5), 0..6).prop_map(|ts| {
            LaurentPoly::from_terms(ts.into_iter().map(|(e, n, d)| (e, ratio(n, d))))
        })
    }

    #[test]
    fn eval_with_negative_powers() {
        let p = LaurentPoly::from_terms([(0, ratio(3, 4)), (-2, ratio(3, 4))]);
        assert_eq!(p.eval(&rat(1)).unwrap(), ratio(3, 2));
        assert_eq!(p.eval(&rat(0)), Err(Error::ZeroSubstitution));
        assert_eq!(p.to_string(), "3/4 + 3/4*N^-2");
        assert_eq!(LaurentPoly::zero().eval(&rat(0)).unwrap(), rat(0));
    }

    #[test]
    fn json_schema() {
        let p = LaurentPoly::monomial(rat(1), -1);
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, r#"{"var":"N","coeffs":{"-1":"1"}}"#);
        assert_eq!(serde_json::from_str::<LaurentPoly>(&text).unwrap(), p);
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_laurent(), b in arb_laurent(), c in arb_laurent()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn eval_is_homomorphism(a in arb_laurent(), b in arb_laurent(), n in 1i64..9, d in 1i64..5) {
            let x = ratio(n, d);
            prop_assert_eq!((&a * &b).eval(&x).unwrap(), a.eval(&x).unwrap() * b.eval(&x).unwrap());
        }

        #[test]
        fn json_round_trip(a in arb_laurent()) {
            let back: LaurentPoly = serde_json::from_value(a.to_json()).unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
