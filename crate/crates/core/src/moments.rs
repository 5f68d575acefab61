//! Joint trace moments `E[∏ Tr M^{μ_j}]`, Schur moments `E[S_λ]` and
//! moments of characteristic polynomials for GUE, LUE and JUE.
//!
//! Trace moments are character sums over `λ ⊢ |μ|`; Hermite and Laguerre
//! results are polynomials in `N`, Jacobi results are exact numbers at a
//! fixed `N`.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{int, odd_double_factorial, pow, rat, Poly, Rational};
use crate::characters::{class_column, dim_irrep, MAX_TABLE_WEIGHT};
use crate::ensemble::{Ensemble, Mode, Value};
use crate::error::{Error, Result};
use crate::mops::{coeff_at, det_d, inverse_leading_product, mop_eval};
use crate::partitions::Partition;
use crate::symfun::{c_lambda, check_distinct, g_ratio, schur_at_ones};

/// Exact moment with the ensemble and index it was computed for.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MomentResult {
    pub value: Value,
    pub ensemble: Ensemble,
    pub index: Partition,
}

type MomentCache = RwLock<HashMap<(Ensemble, Partition), Poly>>;

fn symbolic_cache() -> &'static MomentCache {
    static CACHE: OnceLock<MomentCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn check_weight(mu: &Partition) -> Result<()> {
    if mu.weight() > MAX_TABLE_WEIGHT {
        return Err(Error::BoundExceeded {
            what: "moment weight",
            value: mu.weight(),
            bound: MAX_TABLE_WEIGHT,
        });
    }
    Ok(())
}

fn fact(n: usize) -> Rational {
    int(crate::algebra::factorial(n))
}

/// `1 / (2^m m!)`.
fn pairing_norm(m: usize) -> Rational {
    (pow(&rat(2), m) * fact(m)).recip()
}

/// `λ ↦ χ^λ_μ` restricted to nonzero entries, in a fixed order.
fn sorted_column(mu: &Partition) -> Vec<(Partition, i128)> {
    let mut col: Vec<(Partition, i128)> = class_column(mu)
        .iter()
        .map(|(l, &c)| (l.clone(), c))
        .collect();
    col.sort_unstable_by(|a, b| b.0.cmp(&a.0));
    col
}

/// Sums `term(λ)` over a sorted index set in parallel, combining in order.
fn ordered_sum<T, F>(items: &[(Partition, i128)], term: F) -> Vec<T>
where
    T: Send,
    F: Fn(&Partition, i128) -> Option<T> + Sync,
{
    items
        .par_iter()
        .filter_map(|(lam, c)| term(lam, *c))
        .collect()
}

/// `E^{(H)}[p_μ]` as a polynomial in `N`.
fn hermite_trace_poly(mu: &Partition) -> Poly {
    let w = mu.weight();
    if w % 2 == 1 {
        return Poly::zero();
    }
    let m = w / 2;
    let pair = class_column(&Partition::rectangle(2, m));
    let col = sorted_column(mu);
    let terms = ordered_sum(&col, |lam, chi_mu| {
        let chi_pair = *pair.get(lam)?;
        Some(c_lambda(lam).scale(&rat((chi_pair * chi_mu) as i64)))
    });
    terms.into_iter().sum::<Poly>().scale(&pairing_norm(m))
}

/// `E^{(L)}[p_μ]` as a polynomial in `N`.
fn laguerre_trace_poly(mu: &Partition, gamma: &Rational) -> Poly {
    let col = sorted_column(mu);
    let terms = ordered_sum(&col, |lam, chi| {
        let coeff = int(dim_irrep(lam)) * rat(chi as i64);
        Some((g_ratio(lam, gamma) * c_lambda(lam)).scale(&coeff))
    });
    terms
        .into_iter()
        .sum::<Poly>()
        .scale(&fact(mu.weight()).recip())
}

/// `E^{(J)}[p_μ]` at matrix size `n`.
fn jacobi_trace_at(mu: &Partition, gamma1: &Rational, family: &Ensemble, n: u32) -> Result<Rational> {
    let col = sorted_column(mu);
    let nr = rat(n as i64);
    let terms = ordered_sum(&col, |lam, chi| {
        if lam.len() > n as usize {
            return None;
        }
        let d = det_d(family, lam, &Partition::empty(), Some(n)).ok()?;
        Some(g_ratio(lam, gamma1).eval(&nr) * c_lambda(lam).eval(&nr) * rat(chi as i64) * d)
    });
    Ok(terms.into_iter().fold(Rational::zero(), |a, b| a + b))
}

fn cached_poly(ensemble: &Ensemble, mu: &Partition, build: impl FnOnce() -> Poly) -> Poly {
    let key = (ensemble.clone(), mu.clone());
    if let Some(p) = symbolic_cache().read().expect("cache poisoned").get(&key) {
        return p.clone();
    }
    let p = build();
    symbolic_cache()
        .write()
        .expect("cache poisoned")
        .insert(key, p.clone());
    p
}

/// `E[∏_j Tr M^{μ_j}]`.
///
/// Symbolic mode is available for Hermite and Laguerre; Jacobi moments are
/// computed at a fixed `N`.
pub fn trace_joint_moment(ensemble: &Ensemble, mu: &Partition, mode: Mode) -> Result<MomentResult> {
    check_weight(mu)?;
    let poly = match ensemble {
        Ensemble::Hermite => Some(cached_poly(ensemble, mu, || hermite_trace_poly(mu))),
        Ensemble::Laguerre { gamma } => {
            Some(cached_poly(ensemble, mu, || laguerre_trace_poly(mu, gamma)))
        }
        Ensemble::Jacobi { .. } => None,
    };
    let value = match (poly, mode) {
        (Some(p), Mode::Symbolic) => Value::Poly(p),
        (Some(p), Mode::Fixed(n)) => Value::Scalar(p.eval(&rat(n as i64))),
        (None, Mode::Symbolic) => {
            return Err(Error::UnsupportedMode(
                "Jacobi moments are only available at fixed N".into(),
            ))
        }
        (None, Mode::Fixed(n)) => {
            Value::Scalar(jacobi_trace_at(mu, &ensemble.moment_gamma(), ensemble, n)?)
        }
    };
    Ok(MomentResult {
        value,
        ensemble: ensemble.clone(),
        index: mu.clone(),
    })
}

/// Hermite trace moment as a polynomial, the form used by the rescaled
/// statistics.
pub fn gue_trace_poly(mu: &Partition) -> Result<Poly> {
    check_weight(mu)?;
    Ok(cached_poly(&Ensemble::Hermite, mu, || hermite_trace_poly(mu)))
}

/// `E[S_λ]`.
pub fn schur_moment(ensemble: &Ensemble, lambda: &Partition, mode: Mode) -> Result<MomentResult> {
    check_weight(lambda)?;
    let w = lambda.weight();
    let poly = match ensemble {
        Ensemble::Hermite => Some(if w % 2 == 1 {
            Poly::zero()
        } else {
            let m = w / 2;
            let chi = class_column(&Partition::rectangle(2, m))
                .get(lambda)
                .copied()
                .unwrap_or(0);
            c_lambda(lambda).scale(&(rat(chi as i64) * pairing_norm(m)))
        }),
        Ensemble::Laguerre { gamma } => Some(
            (c_lambda(lambda) * g_ratio(lambda, gamma)).scale(&(int(dim_irrep(lambda)) / fact(w))),
        ),
        Ensemble::Jacobi { .. } => None,
    };
    let value = match (poly, mode) {
        (Some(p), Mode::Symbolic) => Value::Poly(p),
        (Some(p), Mode::Fixed(n)) => Value::Scalar(p.eval(&rat(n as i64))),
        (None, Mode::Symbolic) => {
            return Err(Error::UnsupportedMode(
                "Jacobi moments are only available at fixed N".into(),
            ))
        }
        (None, Mode::Fixed(n)) => Value::Scalar(if lambda.len() > n as usize {
            Rational::zero()
        } else {
            let nr = rat(n as i64);
            g_ratio(lambda, &ensemble.moment_gamma()).eval(&nr)
                * c_lambda(lambda).eval(&nr)
                * det_d(ensemble, lambda, &Partition::empty(), Some(n))?
        }),
    };
    Ok(MomentResult {
        value,
        ensemble: ensemble.clone(),
        index: lambda.clone(),
    })
}

pub const MAX_CHARPOLY_POINTS: usize = 5;
pub const MAX_CHARPOLY_DEGREE: usize = 30;

/// `E[∏_{i=1}^p det(t_i - M)]` at pairwise distinct `t`, for `N × N` `M`.
pub fn charpoly_moment(ensemble: &Ensemble, n: u32, t: &[Rational]) -> Result<Rational> {
    let p = t.len();
    if p == 0 || p > MAX_CHARPOLY_POINTS {
        return Err(Error::BoundExceeded {
            what: "number of characteristic polynomials",
            value: p,
            bound: MAX_CHARPOLY_POINTS,
        });
    }
    check_distinct(t)?;
    let n = n as usize;
    let rect = Partition::rectangle(n, p);
    Ok(inverse_leading_product(ensemble, n, n + p) * mop_eval(ensemble, &rect, t)?)
}

/// Coefficients, lowest degree first, of `t ↦ E[det(t - M)^p]`.
///
/// Setting all points equal in the multivariate identity gives
/// `c · Σ_ν κ_{(N^p)ν} S_ν(1^p) t^{|ν|}`, where `κ` is taken with `p`
/// variables.
pub fn charpoly_power_moment(ensemble: &Ensemble, n: u32, p: u32) -> Result<Vec<Rational>> {
    let (n, p) = (n as usize, p as usize);
    if p == 0 || n * p > MAX_CHARPOLY_DEGREE {
        return Err(Error::BoundExceeded {
            what: "degree p·N",
            value: n * p,
            bound: MAX_CHARPOLY_DEGREE,
        });
    }
    let rect = Partition::rectangle(n, p);
    let pref = inverse_leading_product(ensemble, n, n + p);
    let pr = rat(p as i64);
    let subs = rect.subpartitions();
    let terms: Vec<(usize, Rational)> = subs
        .par_iter()
        .map(|nu| {
            let k = coeff_at(ensemble, &rect, nu, p, true);
            (nu.weight(), k * schur_at_ones(nu).eval(&pr))
        })
        .collect();
    let mut coeffs = vec![Rational::zero(); n * p + 1];
    for (deg, c) in terms {
        coeffs[deg] += c;
    }
    Ok(coeffs.into_iter().map(|c| c * &pref).collect())
}

pub const MAX_HYPERGEOM_INDEX: usize = 12;

/// `N (2j-1)!! ₂F₁(-j, 1-N; 2; 2)` as a polynomial in `N`; the series
/// terminates after `j + 1` terms.
pub fn gue_even_trace_hypergeom_poly(j: usize) -> Result<Poly> {
    if j > MAX_HYPERGEOM_INDEX {
        return Err(Error::BoundExceeded {
            what: "hypergeometric index j",
            value: j,
            bound: MAX_HYPERGEOM_INDEX,
        });
    }
    let mut series = Poly::zero();
    // (1-N)_k as a polynomial in N
    let mut rising = Poly::one();
    for k in 0..=j {
        let neg_j = crate::algebra::rising_factorial(&rat(-(j as i64)), k);
        let two_k = crate::algebra::rising_factorial(&rat(2), k);
        let c = neg_j * pow(&rat(2), k) / (two_k * fact(k));
        series += rising.scale(&c);
        rising *= Poly::from_coeffs(vec![rat(1 + k as i64), rat(-1)]);
    }
    Ok((Poly::n() * series).scale(&int(odd_double_factorial(j))))
}

/// The hypergeometric closed form evaluated at `N = n`.
pub fn gue_even_trace_hypergeom(j: usize, n: u32) -> Result<Rational> {
    Ok(gue_even_trace_hypergeom_poly(j)?.eval(&rat(n as i64)))
}

pub const MAX_ODD_PAIR_K: usize = 6;

/// `E[p_{2k-1} p_1] = (2k-1) E[p_{2k-2}]` as polynomials in `N`, with
/// `p_0 = N`.
pub fn gue_odd_pair_sides(k: usize) -> Result<(Poly, Poly)> {
    if k == 0 || k > MAX_ODD_PAIR_K {
        return Err(Error::BoundExceeded {
            what: "odd-pair index k",
            value: k,
            bound: MAX_ODD_PAIR_K,
        });
    }
    let lhs = gue_trace_poly(&Partition::new(vec![2 * k - 1, 1]))?;
    let inner = if k == 1 {
        Poly::n()
    } else {
        gue_trace_poly(&Partition::row(2 * k - 2))?
    };
    Ok((lhs, inner.scale(&rat(2 * k as i64 - 1))))
}

/// Checks the odd-pair identity at `N = n`.
pub fn gue_odd_pair_identity(k: usize, n: u32) -> Result<bool> {
    let (lhs, rhs) = gue_odd_pair_sides(k)?;
    let nr = rat(n as i64);
    Ok(lhs.eval(&nr) == rhs.eval(&nr))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;
    use crate::characters::character;
    use crate::mops::univariate_coeffs;
    use crate::partitions::partitions_of;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn lue() -> Ensemble {
        Ensemble::laguerre(ratio(1, 2)).unwrap()
    }

    fn jue() -> Ensemble {
        Ensemble::jacobi(ratio(1, 3), ratio(1, 4)).unwrap()
    }

    fn sym(e: &Ensemble, mu: &str) -> Poly {
        trace_joint_moment(e, &p(mu), Mode::Symbolic)
            .unwrap()
            .value
            .as_poly()
            .unwrap()
            .clone()
    }

    #[test]
    fn hermite_examples() {
        let h = Ensemble::Hermite;
        assert_eq!(sym(&h, "6"), Poly::from_ints(&[0, 0, 10, 0, 5]));
        assert_eq!(sym(&h, "3"), Poly::zero());
        assert_eq!(sym(&h, "4"), Poly::from_ints(&[0, 1, 0, 2]));
        assert_eq!(sym(&h, "2"), Poly::from_ints(&[0, 0, 1]));
        assert_eq!(sym(&h, "1,1"), Poly::n());
        let fixed = trace_joint_moment(&h, &p("4"), Mode::Fixed(3)).unwrap();
        assert_eq!(fixed.value, Value::Scalar(rat(57)));
        assert!(trace_joint_moment(&h, &Partition::row(25), Mode::Symbolic).is_err());
    }

    #[test]
    fn laguerre_examples() {
        let g = ratio(1, 2);
        let e = lue();
        // N(N+γ)
        assert_eq!(sym(&e, "1"), Poly::from_coeffs(vec![rat(0), g.clone(), rat(1)]));
        // N = 1 reduces to Gamma moments (γ+1)_k
        for k in 1..=5 {
            let v = trace_joint_moment(&e, &Partition::row(k), Mode::Fixed(1)).unwrap();
            assert_eq!(v.value, Value::Scalar(crate::algebra::rising_factorial(&(&g + rat(1)), k)));
        }
    }

    #[test]
    fn jacobi_examples() {
        let e = jue();
        let v = trace_joint_moment(&e, &p("1"), Mode::Fixed(1)).unwrap();
        let (g1, g2) = (ratio(1, 3), ratio(1, 4));
        assert_eq!(v.value, Value::Scalar((&g1 + rat(1)) / (&g1 + &g2 + rat(2))));
        // N = 1 reduces to Beta moments
        for k in 1..=5 {
            let v = trace_joint_moment(&e, &Partition::row(k), Mode::Fixed(1)).unwrap();
            let expect = crate::algebra::rising_factorial(&(&g1 + rat(1)), k)
                / crate::algebra::rising_factorial(&(&g1 + &g2 + rat(2)), k);
            assert_eq!(v.value, Value::Scalar(expect));
        }
        assert!(matches!(
            trace_joint_moment(&e, &p("1"), Mode::Symbolic),
            Err(Error::UnsupportedMode(_))
        ));
    }

    #[test]
    fn schur_moment_examples() {
        let h = Ensemble::Hermite;
        let v = |l: &str| schur_moment(&h, &p(l), Mode::Symbolic).unwrap().value.as_poly().unwrap().clone();
        let n4 = Poly::from_ints(&[0, 6, 11, 6, 1]).scale(&ratio(1, 8));
        assert_eq!(v("4"), n4);
        assert_eq!(v("2,2"), Poly::from_ints(&[0, 0, -1, 0, 1]).scale(&ratio(1, 4)));
        assert_eq!(v("2"), Poly::from_ints(&[0, 1, 1]).scale(&ratio(1, 2)));
        assert_eq!(v("3"), Poly::zero());
    }

    #[test]
    fn parity_and_degree() {
        for w in [2usize, 4, 6, 8] {
            let m = w / 2;
            let top = gue_trace_poly(&Partition::rectangle(2, m)).unwrap();
            assert_eq!(top.degree(), Some(w));
            for mu in partitions_of(w).unwrap() {
                let poly = gue_trace_poly(&mu).unwrap();
                if (mu.len() % 2) == (m % 2) {
                    assert!(poly.is_even(), "{mu}");
                } else {
                    assert!(poly.is_odd(), "{mu}");
                }
                if mu != Partition::rectangle(2, m) {
                    assert!(poly.degree() < top.degree());
                }
            }
        }
    }

    #[test]
    fn power_sums_decompose_into_schur_moments() {
        for e in [Ensemble::Hermite, lue(), jue()] {
            for w in 0..=6 {
                for mu in partitions_of(w).unwrap() {
                    let direct = trace_joint_moment(&e, &mu, Mode::Fixed(5)).unwrap().value;
                    let via: Rational = partitions_of(w)
                        .unwrap()
                        .iter()
                        .map(|lam| {
                            let chi = character(lam, &mu).unwrap();
                            let s = schur_moment(&e, lam, Mode::Fixed(5)).unwrap().value;
                            rat(chi as i64) * s.as_scalar().unwrap()
                        })
                        .fold(Rational::zero(), |a, b| a + b);
                    assert_eq!(direct, Value::Scalar(via), "{e} μ={mu}");
                }
            }
        }
    }

    #[test]
    fn charpoly_examples() {
        let h = Ensemble::Hermite;
        assert_eq!(charpoly_moment(&h, 2, &[rat(0)]).unwrap(), rat(-1));
        assert_eq!(charpoly_moment(&h, 1, &[ratio(5, 3)]).unwrap(), ratio(5, 3));
        let l0 = Ensemble::laguerre(rat(0)).unwrap();
        assert_eq!(charpoly_moment(&l0, 1, &[rat(0)]).unwrap(), rat(-1));
        let e = jue();
        let t = ratio(7, 2);
        let expect = &t - (ratio(1, 3) + rat(1)) / (ratio(1, 3) + ratio(1, 4) + rat(2));
        assert_eq!(charpoly_moment(&e, 1, &[t]).unwrap(), expect);
        assert!(charpoly_moment(&h, 2, &[rat(1), rat(1)]).is_err());
    }

    #[test]
    fn charpoly_power_examples() {
        let h = Ensemble::Hermite;
        for n in 1..=6u32 {
            let c = charpoly_power_moment(&h, n, 1).unwrap();
            assert_eq!(c, univariate_coeffs(&h, n as usize).unwrap().coeffs);
        }
        assert_eq!(charpoly_power_moment(&h, 1, 2).unwrap(), vec![rat(1), rat(0), rat(1)]);
        for e in [h, lue(), jue()] {
            for n in 1..=4u32 {
                for pp in 1..=3u32 {
                    let c = charpoly_power_moment(&e, n, pp).unwrap();
                    assert_eq!(c.len(), (n * pp + 1) as usize);
                    assert_eq!(c.last().unwrap(), &rat(1), "{e} N={n} p={pp}");
                }
            }
        }
        assert!(charpoly_power_moment(&Ensemble::Hermite, 11, 3).is_err());
    }

    #[test]
    fn hypergeometric_closed_form() {
        assert_eq!(gue_even_trace_hypergeom_poly(1).unwrap(), Poly::from_ints(&[0, 0, 1]));
        assert_eq!(gue_even_trace_hypergeom(2, 1).unwrap(), rat(3));
        for j in 1..=8 {
            assert_eq!(
                gue_even_trace_hypergeom_poly(j).unwrap(),
                gue_trace_poly(&Partition::row(2 * j)).unwrap()
            );
        }
        for n in 1..=6 {
            assert_eq!(gue_even_trace_hypergeom(3, n).unwrap(), rat(5 * (n * n) as i64 * (n * n + 2) as i64));
        }
    }

    #[test]
    fn odd_pair_examples() {
        for k in 1..=6 {
            let (l, r) = gue_odd_pair_sides(k).unwrap();
            assert_eq!(l, r, "k={k}");
            assert!(gue_odd_pair_identity(k, 7).unwrap());
        }
        let (l, _) = gue_odd_pair_sides(3).unwrap();
        assert_eq!(l, Poly::from_ints(&[0, 5, 0, 10]));
    }
}
