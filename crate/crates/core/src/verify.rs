//! Golden-identity suites: published tables, structural identities, the Wick
//! oracle and Monte Carlo agreement. Each check records both sides so that
//! failures can be reported verbatim.

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{factorial, int, odd_double_factorial, rat, ratio, LaurentPoly, Poly, Rational};
use crate::characters::{character_table, dim_irrep, sign_character};
use crate::ensemble::{Ensemble, Mode, Value};
use crate::error::{Error, Result};
use crate::fluctuations::{prop_k1_moment, tr_m2_power_closed_form, xk_cumulant, xk_joint_central_moment};
use crate::moments::{
    charpoly_moment, gue_even_trace_hypergeom_poly, gue_odd_pair_sides, gue_trace_poly, schur_moment,
    trace_joint_moment,
};
use crate::mops::{psi_kappa_inverse, verify_dual_cauchy, verify_genfun_truncated};
use crate::montecarlo::{estimate_charpoly_product, estimate_trace_moment, Estimate, SamplerConfig};
use crate::partitions::{partitions_of, Partition};
use crate::wick::{wick_trace_moment, Convention};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

impl Check {
    fn eq<T: PartialEq + std::fmt::Display>(name: impl Into<String>, lhs: &T, rhs: &T) -> Self {
        Check {
            name: name.into(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            pass: lhs == rhs,
        }
    }

    fn holds(name: impl Into<String>, pass: bool) -> Self {
        Check {
            name: name.into(),
            lhs: pass.to_string(),
            rhs: "true".into(),
            pass,
        }
    }
}

/// A numbered group of checks.
#[derive(Clone, Debug, Serialize)]
pub struct Criterion {
    pub id: usize,
    pub title: &'static str,
    pub checks: Vec<Check>,
}

impl Criterion {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub criteria: Vec<Criterion>,
}

impl Report {
    pub fn checked(&self) -> usize {
        self.criteria.iter().map(|c| c.checks.len()).sum()
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.criteria
            .iter()
            .flat_map(|c| c.checks.iter())
            .filter(|c| !c.pass)
            .collect()
    }

    pub fn passed(&self) -> bool {
        self.criteria.iter().all(Criterion::passed)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Tables,
    Wick,
    Mc,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper-tables" => Ok(Suite::Tables),
            "wick" => Ok(Suite::Wick),
            "mc" => Ok(Suite::Mc),
            "all" => Ok(Suite::All),
            other => Err(Error::Parse(format!("unknown suite {other:?}"))),
        }
    }
}

/// Settings for the Monte Carlo criterion.
#[derive(Clone, Copy, Debug)]
pub struct McSettings {
    pub samples: usize,
    pub seed: u64,
    pub workers: usize,
}

impl Default for McSettings {
    fn default() -> Self {
        McSettings {
            samples: 100_000,
            seed: 20240607,
            workers: 4,
        }
    }
}

pub fn run_suite(suite: Suite, skip_mc: bool, mc: McSettings) -> Result<Report> {
    let criteria = match suite {
        Suite::Tables => exact_criteria()?,
        Suite::Wick => vec![wick_equivalence()?],
        Suite::Mc => vec![monte_carlo(mc)?],
        Suite::All => {
            let mut all = exact_criteria()?;
            all.insert(8, wick_equivalence()?);
            if !skip_mc {
                all.push(monte_carlo(mc)?);
            }
            all
        }
    };
    Ok(Report {
        suite: format!("{suite:?}"),
        criteria,
    })
}

/// Criteria 1 through 14, excluding the Wick oracle (9).
pub fn exact_criteria() -> Result<Vec<Criterion>> {
    Ok(vec![
        trace_table()?,
        schur_table()?,
        x_table()?,
        k1_moments()?,
        tr_m2_closed_form()?,
        x2_cumulants()?,
        hypergeometric()?,
        dual_cauchy()?,
        odd_pairs()?,
        character_invariants()?,
        generating_function()?,
        psi_kappa()?,
        xk_structure()?,
    ])
}

fn p(s: &str) -> Partition {
    s.parse().expect("literal partition")
}

fn ints(c: &[i64]) -> Poly {
    Poly::from_ints(c)
}

fn lin(c: i64) -> Poly {
    Poly::linear(rat(c))
}

fn laurent(terms: &[(i64, Rational)]) -> LaurentPoly {
    terms
        .iter()
        .map(|(e, c)| LaurentPoly::monomial(c.clone(), *e))
        .sum()
}

fn gue_symbolic(mu: &Partition) -> Result<Poly> {
    gue_trace_poly(mu)
}

pub fn trace_table() -> Result<Criterion> {
    let n = Poly::n;
    let n2 = || n() * n();
    let table = [
        ("6", (n2() * lin(0) * lin(0) + n2().scale(&rat(2))).scale(&rat(5))),
        ("5,1", n() * ints(&[1, 0, 2]).scale(&rat(5))),
        ("4,2", n() * ints(&[1, 0, 2]) * ints(&[4, 0, 1])),
        ("4,1,1", n2() * ints(&[13, 0, 2])),
        ("3,3", n() * ints(&[1, 0, 4]).scale(&rat(3))),
        ("3,2,1", n2() * ints(&[4, 0, 1]).scale(&rat(3))),
        ("3,1,1,1", n() * ints(&[2, 0, 3]).scale(&rat(3))),
        ("2,2,2", n2() * ints(&[2, 0, 1]) * ints(&[4, 0, 1])),
        ("2,2,1,1", n() * ints(&[2, 0, 1]) * ints(&[4, 0, 1])),
        ("2,1,1,1,1", n2() * ints(&[4, 0, 1]).scale(&rat(3))),
        ("1,1,1,1,1,1", n().pow(3).scale(&rat(15))),
    ];
    let checks = table
        .iter()
        .map(|(mu, expect)| Ok(Check::eq(format!("E[p_({mu})]"), &gue_symbolic(&p(mu))?, expect)))
        .collect::<Result<_>>()?;
    Ok(Criterion {
        id: 1,
        title: "GUE joint trace moments for partitions of 6",
        checks,
    })
}

pub fn schur_table() -> Result<Criterion> {
    let e = ratio(1, 8);
    let table = [
        ("4", (lin(0) * lin(1) * lin(2) * lin(3)).scale(&e)),
        ("3,1", (lin(-1) * lin(0) * lin(1) * lin(2)).scale(&-e.clone())),
        ("2,2", (lin(-1) * lin(0) * lin(0) * lin(1)).scale(&ratio(1, 4))),
        ("2,1,1", (lin(-2) * lin(-1) * lin(0) * lin(1)).scale(&-e.clone())),
        ("1,1,1,1", (lin(-3) * lin(-2) * lin(-1) * lin(0)).scale(&e)),
    ];
    let checks = table
        .iter()
        .map(|(lam, expect)| {
            let v = schur_moment(&Ensemble::Hermite, &p(lam), Mode::Symbolic)?.value;
            Ok(Check::eq(format!("E[S_({lam})]"), &v, &Value::Poly(expect.clone())))
        })
        .collect::<Result<_>>()?;
    Ok(Criterion {
        id: 2,
        title: "GUE Schur moments for partitions of 4",
        checks,
    })
}

pub fn x_table() -> Result<Criterion> {
    let table: [(&[usize], LaurentPoly); 11] = [
        (&[6], LaurentPoly::zero()),
        (&[5, 1], laurent(&[(-2, ratio(5, 4))])),
        (&[4, 2], laurent(&[(-2, rat(1))])),
        (&[4, 1, 1], laurent(&[(-1, ratio(1, 2))])),
        (&[3, 3], laurent(&[(0, ratio(3, 4)), (-2, ratio(3, 4))])),
        (&[3, 2, 1], laurent(&[(-1, ratio(3, 4))])),
        (&[3, 1, 1, 1], laurent(&[(-2, ratio(3, 8))])),
        (&[2, 2, 2], laurent(&[(-1, rat(1))])),
        (&[2, 2, 1, 1], laurent(&[(0, ratio(1, 8)), (-2, ratio(1, 2))])),
        (&[2, 1, 1, 1, 1], laurent(&[(-1, ratio(3, 8))])),
        (&[1, 1, 1, 1, 1, 1], laurent(&[(0, ratio(15, 64))])),
    ];
    let checks = table
        .iter()
        .map(|(ks, expect)| {
            let v = xk_joint_central_moment(ks, Mode::Symbolic)?;
            Ok(Check::eq(format!("E[X{ks:?}]"), &v, &Value::Laurent(expect.clone())))
        })
        .collect::<Result<_>>()?;
    Ok(Criterion {
        id: 3,
        title: "joint central moments of Chebyshev statistics of total degree 6",
        checks,
    })
}

pub fn k1_moments() -> Result<Criterion> {
    let mut checks = Vec::new();
    for n in 1..=5usize {
        let formula = int(factorial(2 * n)) / (rat(8).pow(n as i32) * int(factorial(n)));
        checks.push(Check::eq(format!("closed form n={n}"), &prop_k1_moment(n)?, &formula));
        let v = xk_joint_central_moment(&vec![1; 2 * n], Mode::Symbolic)?;
        checks.push(Check::eq(
            format!("E[X_1^{}]", 2 * n),
            &v,
            &Value::Laurent(LaurentPoly::constant(formula)),
        ));
    }
    Ok(Criterion {
        id: 4,
        title: "even moments of Tr M_R are independent of N",
        checks,
    })
}

pub fn tr_m2_closed_form() -> Result<Criterion> {
    let mut checks = Vec::new();
    for n in 1..=6usize {
        let closed = tr_m2_power_closed_form(n, None)?;
        let direct = crate::fluctuations::rescaled_trace_moment(&Partition::rectangle(2, n))?;
        checks.push(Check::eq(format!("E[(Tr M_R^2)^{n}]"), &closed, &direct));
    }
    Ok(Criterion {
        id: 5,
        title: "product formula for powers of Tr M_R^2",
        checks,
    })
}

pub fn x2_cumulants() -> Result<Criterion> {
    let mut checks = Vec::new();
    for n in 2..=6usize {
        let expect = laurent(&[(2 - n as i64, int(factorial(n - 1)) / rat(2))]);
        checks.push(Check::eq(format!("kappa_{n}(X_2)"), &xk_cumulant(2, n)?, &expect));
    }
    Ok(Criterion {
        id: 6,
        title: "cumulants of X_2 from connected correlators",
        checks,
    })
}

pub fn hypergeometric() -> Result<Criterion> {
    let mut checks = Vec::new();
    for j in 1..=6usize {
        checks.push(Check::eq(
            format!("E[p_{}]", 2 * j),
            &gue_symbolic(&Partition::row(2 * j))?,
            &gue_even_trace_hypergeom_poly(j)?,
        ));
    }
    Ok(Criterion {
        id: 7,
        title: "even GUE trace moments as terminating 2F1 sums",
        checks,
    })
}

/// `count` sets of `len` distinct rationals with small numerators and
/// denominators.
pub fn random_point_sets(rng: &mut ChaCha8Rng, len: usize, count: usize) -> Vec<Vec<Rational>> {
    (0..count)
        .map(|_| {
            let mut pts: Vec<Rational> = Vec::with_capacity(len);
            while pts.len() < len {
                let r = ratio(rng.random_range(-12..=12), rng.random_range(1..=5));
                if !pts.contains(&r) {
                    pts.push(r);
                }
            }
            pts
        })
        .collect()
}

pub fn reference_ensembles() -> [Ensemble; 3] {
    [
        Ensemble::Hermite,
        Ensemble::Laguerre { gamma: ratio(1, 2) },
        Ensemble::Jacobi {
            gamma1: ratio(1, 3),
            gamma2: ratio(1, 4),
        },
    ]
}

pub fn dual_cauchy() -> Result<Criterion> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut checks = Vec::new();
    for e in reference_ensembles() {
        for pp in 1..=3 {
            for q in 1..=3 {
                let ts = random_point_sets(&mut rng, pp, 20);
                let xs = random_point_sets(&mut rng, q, 20);
                let mut ok = 0;
                let mut first_bad = None;
                for (t, x) in ts.iter().zip(&xs) {
                    let (l, r) = verify_dual_cauchy(&e, t, x)?;
                    if l == r {
                        ok += 1;
                    } else if first_bad.is_none() {
                        first_bad = Some((l, r));
                    }
                }
                let name = format!("{e} p={pp} q={q}");
                checks.push(match first_bad {
                    None => Check::eq(name, &ok, &20),
                    Some((l, r)) => Check::eq(name, &l, &r),
                });
            }
        }
    }
    Ok(Criterion {
        id: 8,
        title: "orthogonal-polynomial dual Cauchy identity on random points",
        checks,
    })
}

pub fn wick_equivalence() -> Result<Criterion> {
    let mut mus: Vec<Partition> = Vec::new();
    for w in (0..=8).step_by(2) {
        mus.extend(partitions_of(w)?);
    }
    mus.push(p("10"));
    mus.push(p("6,4"));
    let checks = mus
        .iter()
        .map(|mu| {
            Ok(Check::eq(
                format!("E[p_({mu})]"),
                &wick_trace_moment(mu, Convention::Unrescaled)?,
                &Value::Poly(gue_symbolic(mu)?),
            ))
        })
        .collect::<Result<_>>()?;
    Ok(Criterion {
        id: 9,
        title: "Wick pairing oracle equals the character formula",
        checks,
    })
}

pub fn odd_pairs() -> Result<Criterion> {
    let mut checks = Vec::new();
    for k in 1..=5 {
        let (l, r) = gue_odd_pair_sides(k)?;
        checks.push(Check::eq(format!("E[p_{} p_1]", 2 * k - 1), &l, &r));
    }
    Ok(Criterion {
        id: 10,
        title: "E[p_(2k-1) p_1] = (2k-1) E[p_(2k-2)]",
        checks,
    })
}

pub fn character_invariants() -> Result<Criterion> {
    let mut checks = Vec::new();
    for n in 1..=8 {
        let t = character_table(n)?;
        let k = t.partitions.len();
        let z: Vec<i128> = t
            .partitions
            .iter()
            .map(|m| m.z_centralizer().to_i128().expect("small centralizer"))
            .collect();
        let mut columns = true;
        let mut rows = true;
        for a in 0..k {
            for b in 0..k {
                let col: i128 = (0..k).map(|l| t.values[l][a] * t.values[l][b]).sum();
                columns &= col == if a == b { z[a] } else { 0 };
                let row: Rational = (0..k)
                    .map(|m| ratio((t.values[a][m] * t.values[b][m]) as i64, z[m] as i64))
                    .sum();
                rows &= row == rat(i64::from(a == b));
            }
        }
        let conj = t.partitions.iter().all(|lam| {
            t.partitions.iter().all(|mu| {
                t.get(&lam.conjugate(), mu) == t.get(lam, mu).map(|c| c * sign_character(mu))
            })
        });
        let dims: num_bigint::BigInt = t.partitions.iter().map(|l| dim_irrep(l).pow(2)).sum();
        checks.push(Check::holds(format!("S_{n} column orthogonality"), columns));
        checks.push(Check::holds(format!("S_{n} row orthogonality"), rows));
        checks.push(Check::holds(format!("S_{n} conjugation sign rule"), conj));
        checks.push(Check::eq(format!("S_{n} sum of squared dimensions"), &dims, &factorial(n)));
    }
    Ok(Criterion {
        id: 11,
        title: "character table invariants",
        checks,
    })
}

pub fn generating_function() -> Result<Criterion> {
    let mut checks = Vec::new();
    for vars in 1..=2 {
        for deg in 0..=6 {
            checks.push(Check::holds(
                format!("vars={vars} degree={deg}"),
                verify_genfun_truncated(vars, deg)?,
            ));
        }
    }
    Ok(Criterion {
        id: 12,
        title: "Gaussian generating function in the Schur basis",
        checks,
    })
}

pub fn psi_kappa() -> Result<Criterion> {
    let mut checks = Vec::new();
    for e in reference_ensembles() {
        let mut ok = true;
        let mut count = 0;
        for w in 0..=6 {
            // Φ_λ with l(λ) > N does not exist in N variables
            for lam in partitions_of(w)?.into_iter().filter(|l| l.len() <= 5) {
                ok &= psi_kappa_inverse(&e, &lam, 5)?;
                count += 1;
            }
        }
        checks.push(Check::holds(format!("{e}: {count} intervals at N=5"), ok));
    }
    Ok(Criterion {
        id: 13,
        title: "psi and kappa change-of-basis matrices are mutually inverse",
        checks,
    })
}

pub fn xk_structure() -> Result<Criterion> {
    let mut checks = Vec::new();
    for k in 1..=crate::fluctuations::MAX_XK_DEGREE {
        for n in 1..=12usize {
            if n * k > 12 {
                continue;
            }
            let m = xk_joint_central_moment(&vec![k; n], Mode::Symbolic)?;
            let m = m.as_laurent().expect("symbolic result").clone();
            if k % 2 == 1 && n % 2 == 0 {
                checks.push(Check::eq(format!("[N^-1] E[X_{k}^{n}]"), &m.coeff(-1), &rat(0)));
                let limit = ratio(k as i64, 4).pow(n as i32 / 2) * int(odd_double_factorial(n / 2));
                checks.push(Check::eq(format!("[N^0] E[X_{k}^{n}]"), &m.coeff(0), &limit));
            }
            if k % 2 == 0 && n % 2 == 1 {
                checks.push(Check::eq(format!("[N^0] E[X_{k}^{n}]"), &m.coeff(0), &rat(0)));
            }
        }
    }
    Ok(Criterion {
        id: 14,
        title: "parity structure of Chebyshev moments",
        checks,
    })
}

/// One Monte Carlo comparison, as reported by `verify mc`.
#[derive(Clone, Debug, Serialize)]
pub struct McCheck {
    pub label: String,
    pub target: f64,
    pub estimate: f64,
    pub se: f64,
    pub z: f64,
    pub pass: bool,
}

impl McCheck {
    pub fn new(label: String, target: f64, est: Estimate) -> Self {
        let z = est.z_score(target);
        McCheck {
            label,
            target,
            estimate: est.mean,
            se: est.standard_error,
            z,
            pass: est.agrees_with(target),
        }
    }

    fn into_check(self) -> Check {
        Check {
            name: format!("{} (z = {:.2})", self.label, self.z),
            lhs: format!("{} ± {:.3e}", self.estimate, self.se),
            rhs: format!("{}", self.target),
            pass: self.pass,
        }
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

pub fn mc_trace_check(config: &SamplerConfig, mu: &Partition) -> Result<McCheck> {
    let exact = trace_joint_moment(&config.ensemble, mu, Mode::Fixed(config.n as u32))?;
    let target = to_f64(exact.value.as_scalar().expect("fixed mode"));
    let est = estimate_trace_moment(config, mu)?;
    Ok(McCheck::new(
        format!("{} N={} E[p_({mu})]", config.ensemble, config.n),
        target,
        est,
    ))
}

pub fn mc_charpoly_check(config: &SamplerConfig, t: &[Rational]) -> Result<McCheck> {
    let exact = charpoly_moment(&config.ensemble, config.n as u32, t)?;
    let pts: Vec<f64> = t.iter().map(to_f64).collect();
    let est = estimate_charpoly_product(config, &pts)?;
    let shown: Vec<String> = t.iter().map(|x| x.to_string()).collect();
    Ok(McCheck::new(
        format!("{} N={} E[prod det(t - M)] t=({})", config.ensemble, config.n, shown.join(",")),
        to_f64(&exact),
        est,
    ))
}

pub fn monte_carlo(s: McSettings) -> Result<Criterion> {
    let cfg = |e: Ensemble, n: usize| SamplerConfig::new(e, n, s.samples, s.seed).with_workers(s.workers);
    let gue = cfg(Ensemble::Hermite, 8);
    let lue = cfg(Ensemble::laguerre(rat(1))?, 8);
    let jue = cfg(Ensemble::jacobi(rat(0), rat(0))?, 2);
    let checks = vec![
        mc_trace_check(&gue, &p("2"))?,
        mc_trace_check(&gue, &p("4"))?,
        mc_trace_check(&gue, &p("6"))?,
        mc_charpoly_check(&gue, &[ratio(1, 2)])?,
        mc_charpoly_check(&gue, &[rat(0), rat(1)])?,
        mc_trace_check(&lue, &p("1"))?,
        mc_trace_check(&lue, &p("2"))?,
        mc_trace_check(&jue, &p("1"))?,
    ];
    Ok(Criterion {
        id: 15,
        title: "Monte Carlo agreement within five standard errors",
        checks: checks.into_iter().map(McCheck::into_check).collect(),
    })
}
