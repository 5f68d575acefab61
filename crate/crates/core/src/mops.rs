//! Multivariate Hermite, Laguerre and Jacobi polynomials
//! `Φ_λ(x) = det[φ_{λ_j+N-j}(x_i)] / Δ(x)`, their change of basis to and
//! from Schur polynomials, and numeric checks of the product identities
//! they satisfy.
//!
//! Conventions: `S_λ = Σ_{ν⊆λ} ψ_{λν} Φ_ν` and `Φ_λ = Σ_{ν⊆λ} κ_{λν} S_ν`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::Zero;

use crate::algebra::{
    determinant, factorial, gamma_ratio, int, pow, rat, rising_factorial, MultiPoly, Poly,
    Rational,
};
use crate::ensemble::{Ensemble, Mode, Value};
use crate::error::{Error, Result};
use crate::partitions::{partitions_in_rectangle, partitions_of, Partition};
use crate::symfun::{check_distinct, schur_poly, vandermonde};

/// Largest univariate degree served by [`univariate_coeffs`].
pub const MAX_UNIVARIATE_DEGREE: usize = 160;

/// Classical orthogonal polynomial with exact coefficients, lowest degree
/// first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariateOp {
    pub family: Ensemble,
    pub degree: usize,
    pub coeffs: Vec<Rational>,
}

impl UnivariateOp {
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn leading_coeff(&self) -> &Rational {
        &self.coeffs[self.degree]
    }
}

type OpCache = RwLock<HashMap<(Ensemble, usize), Arc<UnivariateOp>>>;

fn op_cache() -> &'static OpCache {
    static CACHE: OnceLock<OpCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn fact(n: usize) -> Rational {
    int(factorial(n))
}

/// Monic Hermite, Laguerre with leading coefficient `(-1)^n/n!`, or Jacobi
/// orthogonal on `[0,1]` against `x^{γ₁}(1-x)^{γ₂}`.
pub fn univariate_coeffs(family: &Ensemble, n: usize) -> Result<Arc<UnivariateOp>> {
    if n > MAX_UNIVARIATE_DEGREE {
        return Err(Error::BoundExceeded {
            what: "univariate degree",
            value: n,
            bound: MAX_UNIVARIATE_DEGREE,
        });
    }
    let key = (family.clone(), n);
    if let Some(op) = op_cache().read().expect("cache poisoned").get(&key) {
        return Ok(op.clone());
    }
    let mut coeffs = vec![Rational::zero(); n + 1];
    match family {
        Ensemble::Hermite => {
            for m in 0..=n / 2 {
                let c = fact(n) / (fact(m) * fact(n - 2 * m) * pow(&rat(2), m));
                coeffs[n - 2 * m] = if m % 2 == 0 { c } else { -c };
            }
        }
        Ensemble::Laguerre { gamma } => {
            for (j, slot) in coeffs.iter_mut().enumerate() {
                let c = rising_factorial(&(gamma + rat(j as i64 + 1)), n - j)
                    / (fact(n - j) * fact(j));
                *slot = if j % 2 == 0 { c } else { -c };
            }
        }
        Ensemble::Jacobi { gamma1, .. } => {
            let a = family.alpha();
            for (j, slot) in coeffs.iter_mut().enumerate() {
                let c = rising_factorial(&(gamma1 + rat(j as i64 + 1)), n - j)
                    * rising_factorial(&(&a + rat(n as i64 + 1)), j)
                    / (fact(j) * fact(n - j));
                *slot = if j % 2 == 0 { c } else { -c };
            }
        }
    }
    let op = Arc::new(UnivariateOp {
        family: family.clone(),
        degree: n,
        coeffs,
    });
    op_cache()
        .write()
        .expect("cache poisoned")
        .insert(key, op.clone());
    Ok(op)
}

/// Leading coefficient of the degree-`n` univariate polynomial.
pub fn leading_coeff(family: &Ensemble, n: usize) -> Rational {
    let sign = if n.is_multiple_of(2) { rat(1) } else { rat(-1) };
    match family {
        Ensemble::Hermite => rat(1),
        Ensemble::Laguerre { .. } => sign / fact(n),
        Ensemble::Jacobi { .. } => {
            sign * rising_factorial(&(family.alpha() + rat(n as i64 + 1)), n) / fact(n)
        }
    }
}

/// `Φ_λ(x)` for `l(λ) ≤ len(x)` at pairwise distinct points.
pub fn mop_eval(family: &Ensemble, lambda: &Partition, x: &[Rational]) -> Result<Rational> {
    let n = x.len();
    if lambda.len() > n {
        return Err(Error::InvalidParameter(format!(
            "partition {lambda} has more than {n} parts"
        )));
    }
    check_distinct(x)?;
    let parts = lambda.padded(n);
    let ops = (0..n)
        .map(|j| univariate_coeffs(family, parts[j] + n - 1 - j))
        .collect::<Result<Vec<_>>>()?;
    let m = x
        .iter()
        .map(|xi| ops.iter().map(|op| op.eval(xi)).collect())
        .collect();
    Ok(determinant(m) / vandermonde(x))
}

fn check_pair(lambda: &Partition, nu: &Partition) -> Result<()> {
    if !nu.is_contained_in(lambda) {
        return Err(Error::NotContained {
            inner: nu.to_string(),
            outer: lambda.to_string(),
        });
    }
    Ok(())
}

fn hermite_parity(lambda: &Partition, nu: &Partition) -> Result<()> {
    let d = lambda.weight() - nu.weight();
    if d % 2 == 1 {
        return Err(Error::ParityViolation(d));
    }
    Ok(())
}

/// `λ_j - ν_k - j + k` for zero-based `j, k`.
fn shift(lp: &[usize], np: &[usize], j: usize, k: usize) -> i64 {
    lp[j] as i64 - np[k] as i64 - j as i64 + k as i64
}

/// `D^{(H)}_{λν} = det[1_{even ≥ 0} / ((λ_j-ν_k-j+k)/2)!]` of size `l(λ)`.
fn hermite_d(lambda: &Partition, nu: &Partition) -> Rational {
    let l = lambda.len();
    let (lp, np) = (lambda.padded(l), nu.padded(l));
    let m = (0..l)
        .map(|j| {
            (0..l)
                .map(|k| {
                    let s = shift(&lp, &np, j, k);
                    if s >= 0 && s % 2 == 0 {
                        fact(s as usize / 2).recip()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    determinant(m)
}

/// `D^{(L)}_{λν} = det[1_{≥ 0} / (λ_i-ν_j-i+j)!]` of size `l(λ)`.
fn laguerre_d(lambda: &Partition, nu: &Partition) -> Rational {
    let l = lambda.len();
    let (lp, np) = (lambda.padded(l), nu.padded(l));
    let m = (0..l)
        .map(|j| {
            (0..l)
                .map(|k| {
                    let s = shift(&lp, &np, j, k);
                    if s >= 0 {
                        fact(s as usize).recip()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    determinant(m)
}

/// `∏_{i=1}^N Γ(2N-2i+a+2) · 𝒟^{(J)}_{λν}`, whose entries are
/// `1/(λ_j-ν_k-j+k)! · Γ(2N-2j+a+2)/Γ(2N+λ_j+ν_k-j-k+a+2)`. At `ν = ∅`
/// this is the determinant in the Jacobi trace-moment formula.
fn jacobi_d(lambda: &Partition, nu: &Partition, n: usize, a: &Rational) -> Rational {
    let (lp, np) = (lambda.padded(n), nu.padded(n));
    let m = (0..n)
        .map(|j| {
            (0..n)
                .map(|k| {
                    let s = shift(&lp, &np, j, k);
                    if s < 0 {
                        return Rational::zero();
                    }
                    // 1-based: x = 2N - 2j + a + 2, d = λ_j + ν_k + j - k
                    let x = a + rat((2 * n - 2 * j) as i64);
                    let d = lp[j] as i64 + np[k] as i64 + j as i64 - k as i64;
                    gamma_ratio(&x, d) / fact(s as usize)
                })
                .collect()
        })
        .collect();
    determinant(m)
}

/// The determinant `D_{λν}` entering the change-of-basis coefficients.
///
/// Hermite and Laguerre determinants are independent of `N`; the Jacobi one
/// needs the matrix size.
pub fn det_d(
    family: &Ensemble,
    lambda: &Partition,
    nu: &Partition,
    n: Option<u32>,
) -> Result<Rational> {
    check_pair(lambda, nu)?;
    match family {
        Ensemble::Hermite => {
            hermite_parity(lambda, nu)?;
            Ok(hermite_d(lambda, nu))
        }
        Ensemble::Laguerre { .. } => Ok(laguerre_d(lambda, nu)),
        Ensemble::Jacobi { .. } => {
            let n = n.ok_or_else(|| {
                Error::UnsupportedMode("the Jacobi determinant needs a fixed N".into())
            })? as usize;
            fixed_size_ok(lambda, n)?;
            Ok(jacobi_d(lambda, nu, n, &family.alpha()))
        }
    }
}

fn fixed_size_ok(lambda: &Partition, n: usize) -> Result<()> {
    if lambda.len() > n {
        return Err(Error::InvalidParameter(format!(
            "partition {lambda} has more than N = {n} parts"
        )));
    }
    Ok(())
}

/// `C_λ(N)/C_ν(N)`: the content product over the skew diagram `λ/ν`.
fn skew_content(lambda: &Partition, nu: &Partition) -> Poly {
    let mut acc = Poly::one();
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in nu.part(i + 1)..row {
            acc *= Poly::linear(rat(j as i64 - i as i64));
        }
    }
    acc
}

fn hermite_coeff(lambda: &Partition, nu: &Partition, kappa: bool) -> Poly {
    let d = lambda.weight() - nu.weight();
    if d % 2 == 1 {
        return Poly::zero();
    }
    let half = d / 2;
    let base = if kappa { Rational::new((-1).into(), 2.into()) } else { Rational::new(1.into(), 2.into()) };
    skew_content(lambda, nu).scale(&(pow(&base, half) * hermite_d(lambda, nu)))
}

/// `(-1)^{|ν| + N(N-1)/2}`.
fn lj_sign(nu: &Partition, n: usize) -> Rational {
    if (nu.weight() + n * (n - 1) / 2).is_multiple_of(2) {
        rat(1)
    } else {
        rat(-1)
    }
}

/// `G_λ(N,γ)/G_ν(N,γ) = ∏_j (ν_j+N-j+γ+1)_{λ_j-ν_j}`.
fn g_quotient(lambda: &Partition, nu: &Partition, n: usize, gamma: &Rational) -> Rational {
    let (lp, np) = (lambda.padded(n), nu.padded(n));
    (0..n)
        .map(|j| rising_factorial(&(gamma + rat((np[j] + n - j) as i64)), lp[j] - np[j]))
        .product()
}

/// `G_λ(N,0) = ∏_j (λ_j+N-j)!`.
fn g_zero(lambda: &Partition, n: usize) -> Rational {
    let lp = lambda.padded(n);
    (0..n).map(|j| fact(lp[j] + n - 1 - j)).product()
}

fn laguerre_coeff(lambda: &Partition, nu: &Partition, n: usize, gamma: &Rational, kappa: bool) -> Rational {
    let common = lj_sign(nu, n) * g_quotient(lambda, nu, n, gamma) * laguerre_d(lambda, nu);
    if kappa {
        common / g_zero(nu, n)
    } else {
        common * g_zero(lambda, n)
    }
}

fn jacobi_coeff(
    lambda: &Partition,
    nu: &Partition,
    n: usize,
    gamma1: &Rational,
    a: &Rational,
    kappa: bool,
) -> Rational {
    let (lp, np) = (lambda.padded(n), nu.padded(n));
    let m = |j: usize| lp[j] + n - 1 - j;
    let mn = |k: usize| np[k] + n - 1 - k;
    let common = lj_sign(nu, n) * g_quotient(lambda, nu, n, gamma1);
    let matrix: Vec<Vec<Rational>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|k| {
                    let s = shift(&lp, &np, j, k);
                    if s < 0 {
                        return Rational::zero();
                    }
                    let inv_s = fact(s as usize).recip();
                    if kappa {
                        // (λ_j+N-j+a+1)_{N+ν_k-k} / s!
                        rising_factorial(&(a + rat(m(j) as i64 + 1)), mn(k)) * inv_s
                    } else {
                        // 1 / (s! (ν_k+N-k+a+1)_{N+λ_j-j+1})
                        inv_s / rising_factorial(&(a + rat(mn(k) as i64 + 1)), m(j) + 1)
                    }
                })
                .collect()
        })
        .collect();
    let det = determinant(matrix);
    if kappa {
        common * det / g_zero(nu, n)
    } else {
        let weights: Rational = (0..n)
            .map(|k| a + rat(2 * mn(k) as i64 + 1))
            .product();
        common * g_zero(lambda, n) * det * weights
    }
}

/// `ψ_{λν}` (or `κ_{λν}` when `kappa`) at fixed `N`, zero across Hermite
/// parity. Assumes `ν ⊆ λ` and `l(λ) ≤ N`.
pub(crate) fn coeff_at(family: &Ensemble, lambda: &Partition, nu: &Partition, n: usize, kappa: bool) -> Rational {
    match family {
        Ensemble::Hermite => hermite_coeff(lambda, nu, kappa).eval(&rat(n as i64)),
        Ensemble::Laguerre { gamma } => laguerre_coeff(lambda, nu, n, gamma, kappa),
        Ensemble::Jacobi { gamma1, .. } => {
            jacobi_coeff(lambda, nu, n, gamma1, &family.alpha(), kappa)
        }
    }
}

fn coeff(family: &Ensemble, lambda: &Partition, nu: &Partition, mode: Mode, kappa: bool) -> Result<Value> {
    check_pair(lambda, nu)?;
    if let Ensemble::Hermite = family {
        hermite_parity(lambda, nu)?;
    }
    match (family, mode) {
        (Ensemble::Hermite, Mode::Symbolic) => Ok(Value::Poly(hermite_coeff(lambda, nu, kappa))),
        (_, Mode::Symbolic) => Err(Error::UnsupportedMode(format!(
            "{} coefficients are only available at fixed N",
            family
        ))),
        (_, Mode::Fixed(n)) => {
            let n = n as usize;
            fixed_size_ok(lambda, n)?;
            Ok(Value::Scalar(coeff_at(family, lambda, nu, n, kappa)))
        }
    }
}

/// Coefficient of `Φ_ν` in the expansion of `S_λ`.
pub fn psi_coeff(family: &Ensemble, lambda: &Partition, nu: &Partition, mode: Mode) -> Result<Value> {
    coeff(family, lambda, nu, mode, false)
}

/// Coefficient of `S_ν` in the expansion of `Φ_λ`.
pub fn kappa_coeff(family: &Ensemble, lambda: &Partition, nu: &Partition, mode: Mode) -> Result<Value> {
    coeff(family, lambda, nu, mode, true)
}

/// Checks that the triangular matrices `(ψ_{αβ})` and `(κ_{αβ})` over the
/// interval `{ν ⊆ λ}` multiply to the identity at fixed `N`.
pub fn psi_kappa_inverse(family: &Ensemble, lambda: &Partition, n: u32) -> Result<bool> {
    let n = n as usize;
    fixed_size_ok(lambda, n)?;
    let poset = lambda.subpartitions();
    let entry = |a: &Partition, b: &Partition, kappa: bool| {
        if b.is_contained_in(a) {
            coeff_at(family, a, b, n, kappa)
        } else {
            Rational::zero()
        }
    };
    let psi: Vec<Vec<Rational>> = poset
        .iter()
        .map(|a| poset.iter().map(|b| entry(a, b, false)).collect())
        .collect();
    let kap: Vec<Vec<Rational>> = poset
        .iter()
        .map(|a| poset.iter().map(|b| entry(a, b, true)).collect())
        .collect();
    for i in 0..poset.len() {
        for j in 0..poset.len() {
            let s = (0..poset.len())
                .map(|k| &psi[i][k] * &kap[k][j])
                .fold(Rational::zero(), |a, b| a + b);
            if s != rat(i64::from(i == j)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `∏_{j=0}^{m-1} 1/lc_j`, the normalization turning the Hermite-form
/// identities into ones for non-monic families.
pub(crate) fn inverse_leading_product(family: &Ensemble, from: usize, to: usize) -> Rational {
    (from..to)
        .map(|j| leading_coeff(family, j).recip())
        .product()
}

/// Both sides of `∏_{i,j}(t_i - x_j) = c · Σ_{λ⊆(q^p)} (-1)^{|λ̃|} Φ_λ(t) Φ_{λ̃}(x)`,
/// with `p = len(t)`, `q = len(x)` and `c = ∏_{j<p+q} 1/lc_j`.
pub fn verify_dual_cauchy(
    family: &Ensemble,
    t: &[Rational],
    x: &[Rational],
) -> Result<(Rational, Rational)> {
    let (p, q) = (t.len(), x.len());
    for (name, len) in [("p", p), ("q", q)] {
        if !(1..=4).contains(&len) {
            return Err(Error::BoundExceeded {
                what: if name == "p" { "p = len(t)" } else { "q = len(x)" },
                value: len,
                bound: 4,
            });
        }
    }
    check_distinct(t)?;
    check_distinct(x)?;
    let lhs: Rational = t
        .iter()
        .flat_map(|ti| x.iter().map(move |xj| ti - xj))
        .product();
    let mut sum = Rational::zero();
    for lam in partitions_in_rectangle(p, q) {
        let comp = lam.rect_complement(p, q)?;
        let term = mop_eval(family, &lam, t)? * mop_eval(family, &comp, x)?;
        if comp.weight() % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let rhs = inverse_leading_product(family, 0, p + q) * sum;
    Ok((lhs, rhs))
}

pub const MAX_GENFUN_VARS: usize = 3;
pub const MAX_GENFUN_DEGREE: usize = 8;

/// Both sides of the truncated expansion
/// `∏_j exp(-t_j²/2) = Σ_{|ν| even} (-1/2)^{|ν|/2} S_ν(t) D^{(H)}_{ν∅}`,
/// as polynomials in `vars` variables truncated at `max_degree`.
pub fn genfun_sides(vars: usize, max_degree: usize) -> Result<(MultiPoly, MultiPoly)> {
    if vars == 0 || vars > MAX_GENFUN_VARS {
        return Err(Error::BoundExceeded {
            what: "generating-function variables",
            value: vars,
            bound: MAX_GENFUN_VARS,
        });
    }
    if max_degree > MAX_GENFUN_DEGREE {
        return Err(Error::BoundExceeded {
            what: "generating-function degree",
            value: max_degree,
            bound: MAX_GENFUN_DEGREE,
        });
    }
    let deg = max_degree as u32;
    let mut lhs = MultiPoly::one(vars);
    for v in 0..vars {
        let mut series = MultiPoly::zero(vars);
        for k in 0..=max_degree / 2 {
            let mut exps = vec![0; vars];
            exps[v] = 2 * k as u32;
            let c = pow(&Rational::new((-1).into(), 2.into()), k) / fact(k);
            series += MultiPoly::monomial(exps, c);
        }
        lhs = lhs.mul_truncated(&series, deg);
    }
    let mut rhs = MultiPoly::zero(vars);
    for w in (0..=max_degree).step_by(2) {
        let c = pow(&Rational::new((-1).into(), 2.into()), w / 2);
        for nu in partitions_of(w)? {
            let d = hermite_d(&nu, &Partition::empty());
            if d.is_zero() || nu.len() > vars {
                continue;
            }
            rhs += schur_poly(&nu, vars).scale(&(&c * d));
        }
    }
    Ok((lhs, rhs))
}

pub fn verify_genfun_truncated(vars: usize, max_degree: usize) -> Result<bool> {
    let (lhs, rhs) = genfun_sides(vars, max_degree)?;
    Ok(lhs == rhs)
}
