//! Linear statistics of the rescaled GUE `M_R = M / √(4N)`, whose spectrum
//! fills `[-1, 1]`.
//!
//! `X_k = Tr T_k(M_R) - E[Tr T_k(M_R)]` for Chebyshev `T_k`. Every quantity
//! here is a Laurent polynomial in `N` built from the exact trace moments.

use std::collections::{BTreeMap, HashMap};
use std::sync::{OnceLock, RwLock};

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{binomial, factorial, int, rat, LaurentPoly, Poly, Rational};
use crate::ensemble::{Mode, Value};
use crate::error::{Error, Result};
use crate::moments::{gue_even_trace_hypergeom_poly, gue_trace_poly};
use crate::partitions::Partition;

pub const MAX_RESCALED_WEIGHT: usize = 24;
pub const MAX_CHEBYSHEV_DEGREE: usize = 16;
pub const MAX_XK_DEGREE: usize = 8;
pub const MAX_CONNECTED_WEIGHT: usize = 20;

fn bound(what: &'static str, value: usize, bound: usize) -> Result<()> {
    if value > bound {
        return Err(Error::BoundExceeded { what, value, bound });
    }
    Ok(())
}

/// `E[p_μ(M_R)] = E[p_μ(M)] / (4N)^{|μ|/2}`.
pub fn rescaled_trace_moment(mu: &Partition) -> Result<LaurentPoly> {
    let w = mu.weight();
    bound("rescaled moment weight", w, MAX_RESCALED_WEIGHT)?;
    if w % 2 == 1 {
        return Ok(LaurentPoly::zero());
    }
    Ok(rescale_poly(&gue_trace_poly(mu)?, w / 2))
}

fn rescale_poly(p: &Poly, half: usize) -> LaurentPoly {
    LaurentPoly::from(p)
        .scale(&rat(4).pow(-(half as i32)))
        .shift(-(half as i64))
}

/// Monomial coefficients of `T_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChebyshevCoeffs {
    pub k: usize,
    /// degree → coefficient, nonzero entries only
    pub coeffs: BTreeMap<usize, Rational>,
}

impl ChebyshevCoeffs {
    pub fn coeff(&self, j: usize) -> Rational {
        self.coeffs.get(&j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: serde_json::Map<String, serde_json::Value> = self
            .coeffs
            .iter()
            .map(|(j, c)| (j.to_string(), c.to_string().into()))
            .collect();
        serde_json::json!({ "k": self.k, "coeffs": coeffs })
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .map(|(&j, c)| c * x.pow(j as i32))
            .fold(Rational::zero(), |a, b| a + b)
    }
}

/// `T_k` via `T_{k+1} = 2x T_k - T_{k-1}`.
pub fn chebyshev_coeffs(k: usize) -> Result<ChebyshevCoeffs> {
    bound("Chebyshev degree", k, MAX_CHEBYSHEV_DEGREE)?;
    let mut prev = Poly::one();
    let mut cur = Poly::from_ints(&[0, 1]);
    if k == 0 {
        cur = prev.clone();
    }
    for _ in 1..k {
        let next = Poly::from_ints(&[0, 2]) * &cur - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    Ok(ChebyshevCoeffs {
        k,
        coeffs: cur.terms().map(|(j, c)| (j, c.clone())).collect(),
    })
}

/// `E[∏_i X_{k_i}]` as a Laurent polynomial in `N`, or its value at fixed `N`.
///
/// Each factor is `Σ_{j≥1} c_{k,j} (p_j - E p_j)`; the `j = 0` term is the
/// deterministic `Tr I = N` and cancels against its own mean.
pub fn xk_joint_central_moment(ks: &[usize], mode: Mode) -> Result<Value> {
    for &k in ks {
        bound("Chebyshev index", k, MAX_XK_DEGREE)?;
    }
    bound("total degree", ks.iter().sum(), MAX_RESCALED_WEIGHT)?;
    let mut expansion: BTreeMap<Partition, LaurentPoly> =
        BTreeMap::from([(Partition::empty(), LaurentPoly::one())]);
    for &k in ks {
        let cheb = chebyshev_coeffs(k)?;
        let mut next: BTreeMap<Partition, LaurentPoly> = BTreeMap::new();
        for (mono, coef) in &expansion {
            for (&j, c) in cheb.coeffs.iter().filter(|(&j, _)| j > 0) {
                let mean = rescaled_trace_moment(&Partition::row(j))?;
                let mut parts = mono.parts().to_vec();
                parts.push(j);
                *next.entry(Partition::new(parts)).or_insert_with(LaurentPoly::zero) +=
                    coef.scale(c);
                *next.entry(mono.clone()).or_insert_with(LaurentPoly::zero) -=
                    coef.clone() * mean.scale(c);
            }
        }
        next.retain(|_, v| !v.is_zero());
        expansion = next;
    }
    let terms: Vec<(Partition, LaurentPoly)> = expansion.into_iter().collect();
    let value = terms
        .par_iter()
        .map(|(mu, c)| Ok(c.clone() * rescaled_trace_moment(mu)?))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .sum::<LaurentPoly>();
    match mode {
        Mode::Symbolic => Ok(Value::Laurent(value)),
        Mode::Fixed(n) => Ok(Value::Scalar(value.eval(&rat(n as i64))?)),
    }
}

pub const MAX_PROP_K1: usize = 12;

/// `E[(Tr M_R)^{2n}] = (2n)! / (2^{3n} n!)`, independent of `N`.
pub fn prop_k1_moment(n: usize) -> Result<Rational> {
    bound("moment order", n, MAX_PROP_K1)?;
    Ok(int(factorial(2 * n)) / (rat(8).pow(n as i32) * int(factorial(n))))
}

/// Connected (cumulant) part of the rescaled correlator of `Tr M_R^{μ_j}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectedCorrelator {
    pub mu: Partition,
    pub value: LaurentPoly,
}

type ConnectedCache = RwLock<HashMap<Partition, LaurentPoly>>;

fn connected_cache() -> &'static ConnectedCache {
    static CACHE: OnceLock<ConnectedCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Sub-multisets `B` of `rest`, with the number of ways to pick `B` as a
/// subset of the underlying labelled set.
fn sub_multisets(rest: &Partition) -> Vec<(Partition, Partition, BigCount)> {
    let freq: Vec<(usize, usize)> = rest.frequency().into_iter().collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; freq.len()];
    loop {
        let mut taken = Vec::new();
        let mut left = Vec::new();
        let mut ways = BigCount::from(1);
        for (&(v, f), &c) in freq.iter().zip(&choice) {
            taken.extend(std::iter::repeat_n(v, c));
            left.extend(std::iter::repeat_n(v, f - c));
            ways *= binomial(f, c);
        }
        out.push((Partition::new(taken), Partition::new(left), ways));
        // odometer over 0..=f for each value
        let mut i = 0;
        loop {
            if i == freq.len() {
                return out;
            }
            if choice[i] < freq[i].1 {
                choice[i] += 1;
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

type BigCount = num_bigint::BigInt;

/// Moment-to-cumulant inversion on multisets: with `a` the first element of
/// `S` and `R = S \ {a}`, `m(S) = Σ_{B ⊆ R} κ({a} ∪ B) m(R \ B)`.
fn connected_value(mu: &Partition) -> Result<LaurentPoly> {
    if mu.weight() % 2 == 1 {
        return Ok(LaurentPoly::zero());
    }
    if let Some(v) = connected_cache().read().expect("cache poisoned").get(mu) {
        return Ok(v.clone());
    }
    let (&first, tail) = mu.parts().split_first().expect("nonempty index");
    let rest = Partition::new(tail.to_vec());
    let mut value = rescaled_trace_moment(mu)?;
    for (taken, left, ways) in sub_multisets(&rest) {
        if left.is_empty() {
            continue;
        }
        let mut block = taken.parts().to_vec();
        block.push(first);
        let kappa = connected_value(&Partition::new(block))?;
        if kappa.is_zero() {
            continue;
        }
        value -= (kappa * rescaled_trace_moment(&left)?).scale(&int(ways));
    }
    connected_cache()
        .write()
        .expect("cache poisoned")
        .insert(mu.clone(), value.clone());
    Ok(value)
}

/// Connected rescaled correlator `E[∏ Tr M_R^{μ_j}]_c`; zero for odd `|μ|`.
pub fn connected_correlator(mu: &Partition) -> Result<ConnectedCorrelator> {
    if mu.is_empty() {
        return Err(Error::InvalidParameter("connected correlator needs at least one trace".into()));
    }
    bound("connected correlator weight", mu.weight(), MAX_CONNECTED_WEIGHT)?;
    Ok(ConnectedCorrelator {
        mu: mu.clone(),
        value: connected_value(mu)?,
    })
}

/// `a_g = 2^{|μ|} · [N^{2-2g-l(μ)}]` of the connected correlator: the number
/// of labelled connected gluings of genus `g`.
pub fn genus_coefficient(mu: &Partition, g: usize) -> Result<Rational> {
    let c = connected_correlator(mu)?;
    let exp = 2 - 2 * g as i64 - mu.len() as i64;
    Ok(c.value.coeff(exp) * rat(2).pow(mu.weight() as i32))
}

pub const MAX_CUMULANT_DEGREE: usize = 20;

/// `n`-th cumulant of `X_k`, multilinear in the Chebyshev coefficients:
/// `κ_n = Σ_{ν} (n! / ∏ m_j(ν)!) ∏_j c_{k,ν_j} E[∏ Tr M_R^{ν_j}]_c` over
/// multisets `ν` of `n` nonzero Chebyshev degrees.
pub fn xk_cumulant(k: usize, n: usize) -> Result<LaurentPoly> {
    if k == 0 || n == 0 {
        return Err(Error::InvalidParameter("cumulant needs k ≥ 1 and n ≥ 1".into()));
    }
    bound("cumulant degree n·k", n * k, MAX_CUMULANT_DEGREE)?;
    if n == 1 {
        return Ok(LaurentPoly::zero());
    }
    let cheb = chebyshev_coeffs(k)?;
    let degrees: Vec<usize> = cheb.coeffs.keys().copied().filter(|&j| j > 0).collect();
    let mut multisets = Vec::new();
    choose_multisets(&degrees, n, &mut Vec::new(), &mut multisets);
    let terms = multisets
        .par_iter()
        .map(|nu: &Partition| {
            let mut c = int(factorial(n));
            for (j, m) in nu.frequency() {
                c *= cheb.coeff(j).pow(m as i32);
                c /= int(factorial(m));
            }
            Ok(connected_value(nu)?.scale(&c))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(terms.into_iter().sum())
}

fn choose_multisets(from: &[usize], n: usize, acc: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if n == 0 {
        out.push(Partition::new(acc.clone()));
        return;
    }
    for (i, &d) in from.iter().enumerate() {
        acc.push(d);
        choose_multisets(&from[i..], n - 1, acc, out);
        acc.pop();
    }
}

pub const MAX_TR_M2_POWER: usize = 10;

/// `E[(Tr M_R²)^k Tr M_R^{2n-2k}]` in closed form; `mixed_k = None` is the
/// pure power `E[(Tr M_R²)^n] = (4N)^{-n} ∏_{j<n}(N² + 2j)`.
///
/// With `m = n - k`, the unscaled moment is `E[Tr M^{2m}] ∏_{l=m}^{n-1}(N² + 2l)`
/// where `Tr M^0` counts as 1.
pub fn tr_m2_power_closed_form(n: usize, mixed_k: Option<usize>) -> Result<LaurentPoly> {
    bound("power n", n, MAX_TR_M2_POWER)?;
    let k = mixed_k.unwrap_or(n);
    bound("mixed exponent k", k, n)?;
    let m = n - k;
    let base = if m == 0 {
        Poly::one()
    } else {
        gue_even_trace_hypergeom_poly(m)?
    };
    let poly = (m..n).fold(base, |acc, l| {
        acc * Poly::from_coeffs(vec![rat(2 * l as i64), rat(0), rat(1)])
    });
    Ok(rescale_poly(&poly, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;
    use crate::partitions::partitions_of;
    use crate::wick::wick_connected;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn lp(terms: &[(i64, Rational)]) -> LaurentPoly {
        terms
            .iter()
            .map(|(e, c)| LaurentPoly::monomial(c.clone(), *e))
            .sum()
    }

    fn xk(ks: &[usize]) -> LaurentPoly {
        xk_joint_central_moment(ks, Mode::Symbolic)
            .unwrap()
            .as_laurent()
            .unwrap()
            .clone()
    }

    /// Independent oracle: Möbius inversion over all set partitions of the
    /// labelled index set.
    fn set_partition_cumulant(mu: &[usize]) -> LaurentPoly {
        fn partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for mut sp in partitions(n - 1) {
                for b in 0..sp.len() {
                    let mut s = sp.clone();
                    s[b].push(n - 1);
                    out.push(s);
                }
                sp.push(vec![n - 1]);
                out.push(sp);
            }
            out
        }
        partitions(mu.len())
            .into_iter()
            .map(|sp| {
                let b = sp.len();
                let sign = if b % 2 == 1 { 1 } else { -1 };
                let coef = rat(sign) * int(factorial(b - 1));
                let prod: LaurentPoly = sp
                    .iter()
                    .map(|block| {
                        rescaled_trace_moment(&Partition::new(block.iter().map(|&i| mu[i]).collect()))
                            .unwrap()
                    })
                    .fold(LaurentPoly::one(), |a, b| a * b);
                prod.scale(&coef)
            })
            .sum()
    }

    #[test]
    fn rescaled_examples() {
        assert_eq!(rescaled_trace_moment(&p("2")).unwrap(), lp(&[(1, ratio(1, 4))]));
        assert_eq!(rescaled_trace_moment(&p("1,1")).unwrap(), lp(&[(0, ratio(1, 4))]));
        assert_eq!(
            rescaled_trace_moment(&p("2,2")).unwrap(),
            lp(&[(2, ratio(1, 16)), (0, ratio(1, 8))])
        );
        assert_eq!(
            rescaled_trace_moment(&p("4")).unwrap(),
            lp(&[(1, ratio(1, 8)), (-1, ratio(1, 16))])
        );
        assert!(rescaled_trace_moment(&p("5")).unwrap().is_zero());
    }

    #[test]
    fn chebyshev() {
        let c = |k| {
            let t = chebyshev_coeffs(k).unwrap();
            Poly::from_coeffs((0..=k).map(|j| t.coeff(j)).collect())
        };
        assert_eq!(c(0), Poly::one());
        assert_eq!(c(2), Poly::from_ints(&[-1, 0, 2]));
        assert_eq!(c(3), Poly::from_ints(&[0, -3, 0, 4]));
        for k in 0..=16 {
            let t = chebyshev_coeffs(k).unwrap();
            assert_eq!(t.eval(&rat(1)), rat(1));
            if k >= 1 {
                assert_eq!(t.coeff(k), rat(2).pow(k as i32 - 1));
            }
            assert!(t.coeffs.keys().all(|j| (j + k) % 2 == 0));
            // T_k(cos θ) = cos kθ at θ = π/3, cos θ = 1/2
            let expect = match k % 6 {
                0 => rat(1),
                1 | 5 => ratio(1, 2),
                2 | 4 => ratio(-1, 2),
                _ => rat(-1),
            };
            assert_eq!(t.eval(&ratio(1, 2)), expect);
        }
        assert!(chebyshev_coeffs(17).is_err());
    }

    #[test]
    fn x_table_of_weight_six() {
        let table: [(&[usize], LaurentPoly); 11] = [
            (&[6], LaurentPoly::zero()),
            (&[5, 1], lp(&[(-2, ratio(5, 4))])),
            (&[4, 2], lp(&[(-2, rat(1))])),
            (&[4, 1, 1], lp(&[(-1, ratio(1, 2))])),
            (&[3, 3], lp(&[(0, ratio(3, 4)), (-2, ratio(3, 4))])),
            (&[3, 2, 1], lp(&[(-1, ratio(3, 4))])),
            (&[3, 1, 1, 1], lp(&[(-2, ratio(3, 8))])),
            (&[2, 2, 2], lp(&[(-1, rat(1))])),
            (&[2, 2, 1, 1], lp(&[(0, ratio(1, 8)), (-2, ratio(1, 2))])),
            (&[2, 1, 1, 1, 1], lp(&[(-1, ratio(3, 8))])),
            (&[1, 1, 1, 1, 1, 1], lp(&[(0, ratio(15, 64))])),
        ];
        for (ks, expect) in table {
            assert_eq!(xk(ks), expect, "{ks:?}");
        }
        assert_eq!(
            xk_joint_central_moment(&[2, 2, 2], Mode::Fixed(4)).unwrap(),
            Value::Scalar(ratio(1, 4))
        );
        assert!(xk_joint_central_moment(&[9], Mode::Symbolic).is_err());
    }

    #[test]
    fn gaussian_limits() {
        for k in 1..=4usize {
            for n in 1..=6usize {
                if n * k > 24 {
                    continue;
                }
                let m = xk(&vec![k; n]);
                if n % 2 == 0 {
                    let limit = ratio(k as i64, 4).pow(n as i32 / 2)
                        * int(crate::algebra::odd_double_factorial(n / 2));
                    assert_eq!(m.coeff(0), limit, "k={k} n={n}");
                    if k % 2 == 1 {
                        assert!(m.coeff(-1).is_zero(), "k={k} n={n}");
                    }
                } else if k % 2 == 1 {
                    assert!(m.is_zero(), "k={k} n={n}");
                }
            }
        }
    }

    #[test]
    fn k1_moments() {
        assert_eq!(prop_k1_moment(1).unwrap(), ratio(1, 4));
        assert_eq!(prop_k1_moment(2).unwrap(), ratio(3, 16));
        assert_eq!(prop_k1_moment(3).unwrap(), ratio(15, 64));
        for n in 1..=12 {
            assert_eq!(xk(&vec![1; 2 * n]), LaurentPoly::constant(prop_k1_moment(n).unwrap()));
        }
    }

    #[test]
    fn connected_examples() {
        let c = |s: &str| connected_correlator(&p(s)).unwrap().value;
        assert_eq!(c("2"), lp(&[(1, ratio(1, 4))]));
        assert_eq!(c("2,2"), lp(&[(0, ratio(1, 8))]));
        assert_eq!(c("4"), lp(&[(1, ratio(1, 8)), (-1, ratio(1, 16))]));
        assert_eq!(genus_coefficient(&p("2"), 0).unwrap(), rat(1));
        assert_eq!(genus_coefficient(&p("2,2"), 0).unwrap(), rat(2));
        assert_eq!(genus_coefficient(&p("4"), 0).unwrap(), rat(2));
        assert_eq!(genus_coefficient(&p("4"), 1).unwrap(), rat(1));
        assert_eq!(genus_coefficient(&p("4"), 2).unwrap(), rat(0));
    }

    #[test]
    fn connected_matches_oracles() {
        for w in 1..=8 {
            for mu in partitions_of(w).unwrap() {
                let c = connected_correlator(&mu).unwrap().value;
                assert_eq!(c, set_partition_cumulant(mu.parts()), "μ={mu}");
                if w % 2 == 0 {
                    assert_eq!(c, wick_connected(&mu).unwrap(), "μ={mu}");
                }
            }
        }
    }

    #[test]
    fn genus_expansion() {
        for w in (2..=8).step_by(2) {
            for mu in partitions_of(w).unwrap() {
                let c = connected_correlator(&mu).unwrap().value;
                let l = mu.len() as i64;
                for (e, _) in c.terms() {
                    assert!((2 - e - l) >= 0 && (2 - e - l) % 2 == 0, "μ={mu} exponent {e}");
                }
                for g in 0..=w / 2 {
                    let a = genus_coefficient(&mu, g).unwrap();
                    assert!(a.is_integer() && a >= rat(0), "μ={mu} g={g} a={a}");
                }
            }
        }
    }

    fn moments_to_cumulant(m: &[LaurentPoly], n: usize) -> LaurentPoly {
        // κ_n = m_n - Σ_{i=1}^{n-1} C(n-1, i-1) κ_i m_{n-i}
        let mut kappa: Vec<LaurentPoly> = vec![LaurentPoly::zero()];
        for j in 1..=n {
            let mut v = m[j].clone();
            for i in 1..j {
                v -= (kappa[i].clone() * m[j - i].clone()).scale(&int(binomial(j - 1, i - 1)));
            }
            kappa.push(v);
        }
        kappa[n].clone()
    }

    #[test]
    fn cumulants() {
        assert_eq!(xk_cumulant(2, 2).unwrap(), lp(&[(0, ratio(1, 2))]));
        assert_eq!(xk_cumulant(2, 4).unwrap(), lp(&[(-2, rat(3))]));
        assert!(xk_cumulant(2, 1).unwrap().is_zero());
        for n in 2..=10 {
            let expect = int(factorial(n - 1)) / rat(2);
            assert_eq!(xk_cumulant(2, n).unwrap(), lp(&[(2 - n as i64, expect)]), "n={n}");
        }
        for k in 1..=3usize {
            let moments: Vec<LaurentPoly> = (0..=6)
                .map(|n| if n == 0 { LaurentPoly::one() } else { xk(&vec![k; n]) })
                .collect();
            for n in 2..=6 {
                if n * k > 20 {
                    continue;
                }
                let kappa = xk_cumulant(k, n).unwrap();
                assert_eq!(kappa, moments_to_cumulant(&moments, n), "k={k} n={n}");
                if n >= 3 {
                    assert!(kappa.max_exponent().is_none_or(|e| e <= 2 - n as i64));
                }
            }
        }
    }

    #[test]
    fn closed_forms() {
        assert_eq!(tr_m2_power_closed_form(1, None).unwrap(), lp(&[(1, ratio(1, 4))]));
        assert_eq!(
            tr_m2_power_closed_form(2, None).unwrap(),
            rescaled_trace_moment(&p("2,2")).unwrap()
        );
        for n in 1..=6 {
            for k in 0..=n {
                let mut parts = vec![2; k];
                if k < n {
                    parts.push(2 * (n - k));
                }
                assert_eq!(
                    tr_m2_power_closed_form(n, Some(k)).unwrap(),
                    rescaled_trace_moment(&Partition::new(parts)).unwrap(),
                    "n={n} k={k}"
                );
            }
        }
        assert!(tr_m2_power_closed_form(3, Some(4)).is_err());
    }
}
