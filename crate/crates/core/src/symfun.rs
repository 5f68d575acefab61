//! Classical symmetric functions evaluated at rational points, and the
//! content products `C_λ(N)` and Gamma ratios `G_λ(N,γ)/G_0(N,γ)`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{
    determinant, int, pow, rat, rising_factorial_poly, MultiPoly, Poly, Rational,
};
use crate::characters::class_column;
use crate::error::{Error, Result};
use crate::partitions::Partition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Basis {
    Schur,
    Power,
    MopHermite,
    MopLaguerre,
    MopJacobi,
}

/// Finite linear combination of basis elements indexed by partitions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisExpansion<C> {
    pub basis: Basis,
    pub coeffs: BTreeMap<Partition, C>,
}

impl<C> BasisExpansion<C> {
    pub fn get(&self, p: &Partition) -> Option<&C> {
        self.coeffs.get(p)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// `p_r(x) = Σ x_i^r`.
pub fn power_sum(r: usize, x: &[Rational]) -> Rational {
    x.iter().map(|v| pow(v, r)).fold(Rational::zero(), |a, b| a + b)
}

/// `P_μ(x) = ∏_j p_{μ_j}(x)`.
pub fn power_eval(mu: &Partition, x: &[Rational]) -> Rational {
    mu.parts().iter().map(|&r| power_sum(r, x)).product()
}

/// `h_0 .. h_max` at `x`, from `r h_r = Σ_{i=1}^r p_i h_{r-i}`.
pub fn complete_upto(max: usize, x: &[Rational]) -> Vec<Rational> {
    let p: Vec<Rational> = (0..=max).map(|r| power_sum(r, x)).collect();
    let mut h = vec![Rational::one()];
    for r in 1..=max {
        let s = (1..=r).map(|i| &p[i] * &h[r - i]).fold(Rational::zero(), |a, b| a + b);
        h.push(s / rat(r as i64));
    }
    h
}

/// `e_0 .. e_max` at `x`, by multiplying out `∏(1 + x_i t)`.
pub fn elementary_upto(max: usize, x: &[Rational]) -> Vec<Rational> {
    let mut e = vec![Rational::zero(); max + 1];
    e[0] = Rational::one();
    for v in x {
        for r in (1..=max).rev() {
            let add = &e[r - 1] * v;
            e[r] += add;
        }
    }
    e
}

/// `S_λ(x)` by Jacobi-Trudi, `det[h_{λ_i - i + j}]`; valid at repeated points.
pub fn schur_eval(lambda: &Partition, x: &[Rational]) -> Rational {
    if lambda.len() > x.len() {
        return Rational::zero();
    }
    let l = lambda.len();
    let h = complete_upto(lambda.largest() + l, x);
    let m = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| {
                    let idx = lambda.parts()[i] as i64 - i as i64 + j as i64;
                    if idx < 0 {
                        Rational::zero()
                    } else {
                        h[idx as usize].clone()
                    }
                })
                .collect()
        })
        .collect();
    determinant(m)
}

/// `∏_{i<j}(x_i - x_j)`.
pub fn vandermonde(x: &[Rational]) -> Rational {
    let mut acc = Rational::one();
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            acc *= &x[i] - &x[j];
        }
    }
    acc
}

pub(crate) fn check_distinct(x: &[Rational]) -> Result<()> {
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            if x[i] == x[j] {
                return Err(Error::CoincidentPoints(x[i].to_string()));
            }
        }
    }
    Ok(())
}

/// `S_λ(x) = det[x_i^{λ_j + N - j}] / Δ(x)`; needs distinct points.
pub fn schur_eval_bialternant(lambda: &Partition, x: &[Rational]) -> Result<Rational> {
    check_distinct(x)?;
    let n = x.len();
    if lambda.len() > n {
        return Ok(Rational::zero());
    }
    let parts = lambda.padded(n);
    let m = x
        .iter()
        .map(|xi| (0..n).map(|j| pow(xi, parts[j] + n - 1 - j)).collect())
        .collect();
    Ok(determinant(m) / vandermonde(x))
}

/// `S_λ(1^N) = ∏_{(i,j)∈λ} (N + j - i) / hook(i,j)`.
pub fn schur_at_ones(lambda: &Partition) -> Poly {
    let hooks: num_bigint::BigInt = lambda
        .hook_lengths()
        .iter()
        .map(|&h| num_bigint::BigInt::from(h))
        .product();
    c_lambda(lambda).scale(&int(hooks).recip())
}

/// `C_λ(N) = ∏_{(i,j)∈λ} (N - i + j)`.
pub fn c_lambda(lambda: &Partition) -> Poly {
    lambda
        .contents()
        .iter()
        .fold(Poly::one(), |acc, &c| acc * Poly::linear(rat(c)))
}

/// `G_λ(N,γ)/G_0(N,γ) = ∏_j (N - j + γ + 1)_{λ_j}`.
pub fn g_ratio(lambda: &Partition, gamma: &Rational) -> Poly {
    lambda
        .parts()
        .iter()
        .enumerate()
        .fold(Poly::one(), |acc, (i, &part)| {
            let offset = gamma - rat(i as i64);
            acc * rising_factorial_poly(&offset, part)
        })
}

/// `P_μ = Σ_λ χ^λ_μ S_λ`.
pub fn power_to_schur(mu: &Partition) -> BasisExpansion<i128> {
    BasisExpansion {
        basis: Basis::Schur,
        coeffs: class_column(mu)
            .iter()
            .map(|(lam, &c)| (lam.clone(), c))
            .collect(),
    }
}

/// `S_λ(t_1..t_k)` expanded as a polynomial in `k` variables.
pub fn schur_poly(lambda: &Partition, nvars: usize) -> MultiPoly {
    if lambda.len() > nvars {
        return MultiPoly::zero(nvars);
    }
    let l = lambda.len();
    let max = lambda.largest() + l;
    let h: Vec<MultiPoly> = (0..=max).map(|r| complete_poly(r, nvars)).collect();
    let m: Vec<Vec<MultiPoly>> = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| {
                    let idx = lambda.parts()[i] as i64 - i as i64 + j as i64;
                    if idx < 0 {
                        MultiPoly::zero(nvars)
                    } else {
                        h[idx as usize].clone()
                    }
                })
                .collect()
        })
        .collect();
    MultiPoly::determinant(&m, nvars)
}

/// `h_r(t_1..t_k)`: the sum of all monomials of degree `r`.
pub fn complete_poly(r: usize, nvars: usize) -> MultiPoly {
    fn rec(var: usize, rest: u32, cur: &mut Vec<u32>, out: &mut MultiPoly) {
        if var + 1 == cur.len() {
            cur[var] = rest;
            *out += MultiPoly::monomial(cur.clone(), Rational::one());
            return;
        }
        for e in 0..=rest {
            cur[var] = e;
            rec(var + 1, rest - e, cur, out);
        }
    }
    let mut out = MultiPoly::zero(nvars);
    if nvars == 0 {
        return if r == 0 { MultiPoly::one(0) } else { out };
    }
    rec(0, r as u32, &mut vec![0; nvars], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;
    use crate::partitions::{partitions_in_rectangle, partitions_of};
    use proptest::prelude::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn rats(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn schur_examples() {
        assert_eq!(schur_eval(&p("1"), &rats(&[3, 7])), rat(10));
        assert_eq!(schur_eval(&p("2,1"), &rats(&[1, 2])), rat(6));
        assert_eq!(schur_eval(&p("1,1,1"), &rats(&[1, 2])), rat(0));
        assert_eq!(schur_eval(&Partition::empty(), &rats(&[4])), rat(1));
        // repeated points are fine for Jacobi-Trudi
        assert_eq!(schur_eval(&p("2,1"), &rats(&[1, 1])), rat(2));
    }

    #[test]
    fn schur_at_ones_examples() {
        assert_eq!(schur_at_ones(&p("1")), Poly::n());
        assert_eq!(
            schur_at_ones(&p("2")),
            Poly::from_coeffs(vec![rat(0), ratio(1, 2), ratio(1, 2)])
        );
        assert_eq!(schur_at_ones(&p("2,1")).eval(&rat(2)), rat(2));
        for n in 0..=6 {
            for lam in partitions_of(n).unwrap() {
                for nn in 1..=4usize {
                    let ones = vec![rat(1); nn];
                    assert_eq!(schur_at_ones(&lam).eval(&rat(nn as i64)), schur_eval(&lam, &ones));
                }
            }
        }
    }

    #[test]
    fn power_examples() {
        assert_eq!(power_eval(&p("2"), &rats(&[1, 2])), rat(5));
        assert_eq!(power_eval(&p("1,1"), &rats(&[1, 2])), rat(9));
        assert_eq!(power_eval(&p("3,1"), &rats(&[1, 1, 1])), rat(9));
    }

    #[test]
    fn power_to_schur_examples() {
        let e = power_to_schur(&p("1"));
        assert_eq!(e.coeffs, BTreeMap::from([(p("1"), 1)]));
        let e = power_to_schur(&p("2"));
        assert_eq!(e.coeffs, BTreeMap::from([(p("2"), 1), (p("1,1"), -1)]));
        let e = power_to_schur(&p("1,1"));
        assert_eq!(e.coeffs, BTreeMap::from([(p("2"), 1), (p("1,1"), 1)]));
    }

    #[test]
    fn content_products() {
        assert_eq!(c_lambda(&p("1")), Poly::n());
        assert_eq!(c_lambda(&p("2,1")), Poly::from_ints(&[0, -1, 0, 1]));
        assert_eq!(c_lambda(&p("2,1")).eval(&rat(3)), rat(24));
        for n in 0..=8 {
            for lam in partitions_of(n).unwrap() {
                let reflected = c_lambda(&lam).reflect();
                let sign = if n % 2 == 0 { rat(1) } else { rat(-1) };
                assert_eq!(c_lambda(&lam.conjugate()), reflected.scale(&sign));
            }
        }
    }

    #[test]
    fn gamma_ratios() {
        let g = ratio(2, 7);
        assert_eq!(g_ratio(&p("1"), &g), Poly::linear(g.clone()));
        assert_eq!(g_ratio(&p("1"), &rat(0)), c_lambda(&p("1")));
        assert_eq!(g_ratio(&p("2"), &rat(1)), Poly::from_ints(&[2, 3, 1]));
        for lam in partitions_of(5).unwrap() {
            assert_eq!(g_ratio(&lam, &rat(0)), c_lambda(&lam));
        }
    }

    #[test]
    fn schur_poly_matches_evaluation() {
        let pt = vec![ratio(1, 2), rat(-3), rat(2)];
        for n in 0..=5 {
            for lam in partitions_of(n).unwrap() {
                assert_eq!(schur_poly(&lam, 3).eval(&pt), schur_eval(&lam, &pt));
            }
        }
    }

    fn arb_points(len: usize) -> impl Strategy<Value = Vec<Rational>> {
        prop::collection::vec((-9i64..9, 1i64..4), len).prop_map(|v| {
            v.into_iter().map(|(a, b)| ratio(a, b)).collect()
        })
    }

    proptest! {
        #[test]
        fn power_schur_round_trip(x in arb_points(3), n in 0usize..=6) {
            for mu in partitions_of(n).unwrap() {
                let expansion = power_to_schur(&mu);
                let total: Rational = expansion.coeffs.iter()
                    .map(|(lam, &c)| rat(c as i64) * schur_eval(lam, &x))
                    .fold(Rational::zero(), |a, b| a + b);
                prop_assert_eq!(total, power_eval(&mu, &x));
            }
        }

        #[test]
        fn jacobi_trudi_matches_bialternant(x in arb_points(3), n in 0usize..=6) {
            prop_assume!(check_distinct(&x).is_ok());
            for lam in partitions_of(n).unwrap() {
                prop_assert_eq!(schur_eval(&lam, &x), schur_eval_bialternant(&lam, &x).unwrap());
            }
        }

        #[test]
        fn classical_dual_cauchy(pp in 1usize..=3, q in 1usize..=3, t in arb_points(3), x in arb_points(3)) {
            let t = &t[..pp];
            let x = &x[..q];
            let lhs: Rational = t.iter()
                .flat_map(|ti| x.iter().map(move |xj| Rational::one() + ti * xj))
                .product();
            let rhs: Rational = partitions_in_rectangle(pp, q).iter()
                .map(|lam| schur_eval(lam, t) * schur_eval(&lam.conjugate(), x))
                .fold(Rational::zero(), |a, b| a + b);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn newton_and_elementary_agree(x in arb_points(3)) {
            // Σ (-1)^r e_r h_{n-r} = 0 for n ≥ 1
            let h = complete_upto(6, &x);
            let e = elementary_upto(6, &x);
            for n in 1..=6 {
                let s = (0..=n).map(|r| {
                    let term = &e[r] * &h[n - r];
                    if r % 2 == 0 { term } else { -term }
                }).fold(Rational::zero(), |a, b| a + b);
                prop_assert!(s.is_zero());
            }
        }
    }
}
