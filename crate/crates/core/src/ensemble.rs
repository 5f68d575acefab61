//! Ensemble parameters and the symbolic/fixed evaluation mode shared by the
//! exact modules.

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::Serialize;

use crate::algebra::{rat, LaurentPoly, Poly, Rational};
use crate::error::{Error, Result};

/// Hermite (GUE), Laguerre (LUE) or Jacobi (JUE) weight, with exact
/// parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ensemble {
    Hermite,
    Laguerre { gamma: Rational },
    Jacobi { gamma1: Rational, gamma2: Rational },
}

impl Ensemble {
    pub fn laguerre(gamma: Rational) -> Result<Self> {
        check_param("gamma", &gamma)?;
        Ok(Ensemble::Laguerre { gamma })
    }

    pub fn jacobi(gamma1: Rational, gamma2: Rational) -> Result<Self> {
        check_param("gamma1", &gamma1)?;
        check_param("gamma2", &gamma2)?;
        Ok(Ensemble::Jacobi { gamma1, gamma2 })
    }

    /// Builds from the short names `gue`/`hermite`, `lue`/`laguerre`,
    /// `jue`/`jacobi`; missing parameters default to zero.
    pub fn from_name(
        name: &str,
        gamma: Option<Rational>,
        gamma1: Option<Rational>,
        gamma2: Option<Rational>,
    ) -> Result<Self> {
        let zero = || rat(0);
        match name.to_ascii_lowercase().as_str() {
            "gue" | "hermite" => Ok(Ensemble::Hermite),
            "lue" | "laguerre" => Ensemble::laguerre(gamma.unwrap_or_else(zero)),
            "jue" | "jacobi" => {
                Ensemble::jacobi(gamma1.unwrap_or_else(zero), gamma2.unwrap_or_else(zero))
            }
            other => Err(Error::Parse(format!("unknown ensemble {other:?}"))),
        }
    }

    pub fn kind(&self) -> Kind {
        match self {
            Ensemble::Hermite => Kind::Hermite,
            Ensemble::Laguerre { .. } => Kind::Laguerre,
            Ensemble::Jacobi { .. } => Kind::Jacobi,
        }
    }

    /// `γ₁ + γ₂` for Jacobi, zero otherwise.
    pub(crate) fn alpha(&self) -> Rational {
        match self {
            Ensemble::Jacobi { gamma1, gamma2 } => gamma1 + gamma2,
            _ => rat(0),
        }
    }

    /// Parameter entering `G_λ(N,·)/G_0(N,·)` in moment formulas.
    pub(crate) fn moment_gamma(&self) -> Rational {
        match self {
            Ensemble::Hermite => rat(0),
            Ensemble::Laguerre { gamma } => gamma.clone(),
            Ensemble::Jacobi { gamma1, .. } => gamma1.clone(),
        }
    }
}

fn check_param(name: &str, v: &Rational) -> Result<()> {
    if *v <= -Rational::one() {
        return Err(Error::InvalidParameter(format!("{name} = {v} must exceed -1")));
    }
    Ok(())
}

impl fmt::Display for Ensemble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ensemble::Hermite => write!(f, "gue"),
            Ensemble::Laguerre { gamma } => write!(f, "lue(gamma={gamma})"),
            Ensemble::Jacobi { gamma1, gamma2 } => {
                write!(f, "jue(gamma1={gamma1}, gamma2={gamma2})")
            }
        }
    }
}

impl Serialize for Ensemble {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Hermite,
    Laguerre,
    Jacobi,
}

impl FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gue" | "hermite" => Ok(Kind::Hermite),
            "lue" | "laguerre" => Ok(Kind::Laguerre),
            "jue" | "jacobi" => Ok(Kind::Jacobi),
            other => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }
}

/// Symbolic in `N`, or evaluated at a fixed matrix size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Symbolic,
    Fixed(u32),
}

impl Mode {
    pub fn fixed_n(self) -> Option<u32> {
        match self {
            Mode::Fixed(n) => Some(n),
            Mode::Symbolic => None,
        }
    }
}

/// An exact result: polynomial or Laurent polynomial in `N`, or a number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Poly(Poly),
    Laurent(LaurentPoly),
    Scalar(#[serde(serialize_with = "ser_rational")] Rational),
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl Value {
    /// Evaluates at `N = n` (scalars are returned unchanged).
    pub fn at(&self, n: &Rational) -> Result<Rational> {
        match self {
            Value::Poly(p) => Ok(p.eval(n)),
            Value::Laurent(p) => p.eval(n),
            Value::Scalar(r) => Ok(r.clone()),
        }
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        match self {
            Value::Poly(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        match self {
            Value::Laurent(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_scalar(&self) -> Option<&Rational> {
        match self {
            Value::Scalar(r) => Some(r),
            _ => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("value serializes")
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Poly(p) => p.fmt(f),
            Value::Laurent(p) => p.fmt(f),
            Value::Scalar(r) => r.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;

    #[test]
    fn parameter_validation() {
        assert!(Ensemble::laguerre(rat(-1)).is_err());
        assert!(Ensemble::laguerre(ratio(-1, 2)).is_ok());
        assert!(Ensemble::jacobi(rat(0), ratio(-3, 2)).is_err());
        assert_eq!(
            Ensemble::from_name("JUE", None, Some(ratio(1, 3)), None).unwrap(),
            Ensemble::Jacobi {
                gamma1: ratio(1, 3),
                gamma2: rat(0)
            }
        );
        assert!(Ensemble::from_name("cue", None, None, None).is_err());
    }

    #[test]
    fn value_json() {
        let v = Value::Scalar(ratio(3, 4));
        assert_eq!(v.to_json(), serde_json::json!("3/4"));
        let v = Value::Poly(Poly::n());
        assert_eq!(v.to_json(), serde_json::json!({"var": "N", "coeffs": {"1": "1"}}));
    }
}
