//! Floating-point sampling of GUE, LUE and JUE matrices, used only as an
//! end-to-end numerical check of the exact modules.
//!
//! Work is split into `workers` contiguous chunks; chunk `w` draws from a
//! ChaCha8 stream keyed by `(seed, w)` and the partial sums are combined in
//! worker order, so a given `(seed, workers)` always reproduces the same
//! estimate bit for bit.

use nalgebra::{Complex, DMatrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::Rational;
use crate::ensemble::Ensemble;
use crate::error::{Error, Result};
use crate::partitions::Partition;

type C64 = Complex<f64>;

pub const MAX_MC_WEIGHT: usize = 10;
pub const MAX_MC_SIZE: usize = 64;
pub const MAX_MC_POINTS: usize = 3;

/// Acceptance threshold in standard errors.
pub const Z_THRESHOLD: f64 = 5.0;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplerConfig {
    pub ensemble: Ensemble,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub workers: usize,
}

impl SamplerConfig {
    pub fn new(ensemble: Ensemble, n: usize, samples: usize, seed: u64) -> Self {
        SamplerConfig {
            ensemble,
            n,
            samples,
            seed,
            workers: 4,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    fn validate(&self) -> Result<Sampler> {
        if self.n == 0 || self.n > MAX_MC_SIZE {
            return Err(Error::InvalidParameter(format!(
                "matrix size {} must lie in 1..={MAX_MC_SIZE}",
                self.n
            )));
        }
        if self.samples < 2 || self.workers == 0 {
            return Err(Error::InvalidParameter(
                "need at least two samples and one worker".into(),
            ));
        }
        Ok(match &self.ensemble {
            Ensemble::Hermite => Sampler::Gue,
            Ensemble::Laguerre { gamma } => Sampler::Lue(integer_param("gamma", gamma)?),
            Ensemble::Jacobi { gamma1, gamma2 } => {
                Sampler::Jue(integer_param("gamma1", gamma1)?, integer_param("gamma2", gamma2)?)
            }
        })
    }
}

fn integer_param(name: &str, v: &Rational) -> Result<usize> {
    if !v.is_integer() || v < &Rational::from_integer(0.into()) {
        return Err(Error::InvalidParameter(format!(
            "sampling needs a nonnegative integer {name}, got {v}"
        )));
    }
    v.to_integer().try_into().map_err(|_| {
        Error::InvalidParameter(format!("{name} = {v} is too large to sample"))
    })
}

#[derive(Clone, Copy)]
enum Sampler {
    Gue,
    Lue(usize),
    Jue(usize, usize),
}

/// Sample mean with its standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub mean: f64,
    pub standard_error: f64,
    pub samples: usize,
}

impl Estimate {
    /// `(mean - target) / standard_error`.
    pub fn z_score(&self, target: f64) -> f64 {
        if self.standard_error == 0.0 {
            return if self.mean == target { 0.0 } else { f64::INFINITY };
        }
        (self.mean - target) / self.standard_error
    }

    pub fn agrees_with(&self, target: f64) -> bool {
        self.z_score(target).abs() <= Z_THRESHOLD
    }
}

fn complex_normal(rng: &mut ChaCha8Rng, variance: f64) -> C64 {
    let s = (variance / 2.0).sqrt();
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    C64::new(s * re, s * im)
}

fn gue(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<C64> {
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        let d: f64 = StandardNormal.sample(rng);
        m[(i, i)] = C64::new(d, 0.0);
        for j in i + 1..n {
            let z = complex_normal(rng, 1.0);
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

/// `X X†` with `X` of size `n × (n + extra)` and unit-variance complex entries.
fn wishart(n: usize, extra: usize, rng: &mut ChaCha8Rng) -> DMatrix<C64> {
    let x = DMatrix::from_fn(n, n + extra, |_, _| complex_normal(rng, 1.0));
    &x * x.adjoint()
}

fn hermitian_eigenvalues(m: DMatrix<C64>) -> Vec<f64> {
    let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

fn draw(sampler: Sampler, n: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    match sampler {
        Sampler::Gue => hermitian_eigenvalues(gue(n, rng)),
        Sampler::Lue(g) => hermitian_eigenvalues(wishart(n, g, rng)),
        Sampler::Jue(g1, g2) => {
            // eigenvalues of A(A+B)^{-1} are those of L^{-1} A L^{-†}, A+B = L L†
            let a = wishart(n, g1, rng);
            let b = wishart(n, g2, rng);
            let l = (&a + b)
                .cholesky()
                .expect("sum of Wisharts is positive definite")
                .l();
            let linv = l.try_inverse().expect("triangular factor is invertible");
            let m = &linv * a * linv.adjoint();
            hermitian_eigenvalues((&m + m.adjoint()).scale(0.5))
        }
    }
}

fn worker_rng(seed: u64, worker: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(worker as u64);
    rng
}

/// One spectrum drawn from worker stream `worker` of `config.seed`.
pub fn sample_spectrum(config: &SamplerConfig, worker: usize) -> Result<Vec<f64>> {
    let sampler = config.validate()?;
    Ok(draw(sampler, config.n, &mut worker_rng(config.seed, worker)))
}

/// Mean and standard error of `statistic(spectrum)` over `config.samples`
/// independent draws.
pub fn estimate_statistic<F>(config: &SamplerConfig, statistic: F) -> Result<Estimate>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let sampler = config.validate()?;
    let (per, extra) = (config.samples / config.workers, config.samples % config.workers);
    let partial: Vec<(f64, f64, usize)> = (0..config.workers)
        .into_par_iter()
        .map(|w| {
            let count = per + usize::from(w < extra);
            let mut rng = worker_rng(config.seed, w);
            // Welford per chunk, merged below
            let (mut mean, mut m2) = (0.0, 0.0);
            for i in 0..count {
                let x = statistic(&draw(sampler, config.n, &mut rng));
                let delta = x - mean;
                mean += delta / (i + 1) as f64;
                m2 += delta * (x - mean);
            }
            (mean, m2, count)
        })
        .collect();
    let (mut mean, mut m2, mut count) = (0.0, 0.0, 0usize);
    for (mb, m2b, nb) in partial {
        if nb == 0 {
            continue;
        }
        let total = count + nb;
        let delta = mb - mean;
        mean += delta * nb as f64 / total as f64;
        m2 += m2b + delta * delta * (count as f64) * (nb as f64) / total as f64;
        count = total;
    }
    let variance = m2 / (count - 1) as f64;
    Ok(Estimate {
        mean,
        standard_error: (variance / count as f64).sqrt(),
        samples: count,
    })
}

/// `∏_j Σ_i λ_i^{μ_j}`.
pub fn power_sum_product(mu: &Partition, spectrum: &[f64]) -> f64 {
    mu.parts()
        .iter()
        .map(|&k| spectrum.iter().map(|x| x.powi(k as i32)).sum::<f64>())
        .product()
}

/// Empirical `E[∏_j Tr M^{μ_j}]`.
pub fn estimate_trace_moment(config: &SamplerConfig, mu: &Partition) -> Result<Estimate> {
    if mu.weight() > MAX_MC_WEIGHT {
        return Err(Error::BoundExceeded {
            what: "Monte Carlo moment weight",
            value: mu.weight(),
            bound: MAX_MC_WEIGHT,
        });
    }
    estimate_statistic(config, |s| power_sum_product(mu, s))
}

/// Empirical `E[∏_j det(t_j - M)]`, computed from the spectrum.
pub fn estimate_charpoly_product(config: &SamplerConfig, t: &[f64]) -> Result<Estimate> {
    if t.is_empty() || t.len() > MAX_MC_POINTS {
        return Err(Error::BoundExceeded {
            what: "number of characteristic polynomials",
            value: t.len(),
            bound: MAX_MC_POINTS,
        });
    }
    estimate_statistic(config, |s| {
        t.iter()
            .map(|tj| s.iter().map(|x| tj - x).product::<f64>())
            .product()
    })
}

/// Fraction of eigenvalues of `M / √(4N)` lying in `[-a, a]`.
pub fn estimate_semicircle_fraction(config: &SamplerConfig, a: f64) -> Result<Estimate> {
    let scale = (4.0 * config.n as f64).sqrt();
    estimate_statistic(config, |s| {
        s.iter().filter(|x| (*x / scale).abs() <= a).count() as f64 / s.len() as f64
    })
}

/// `∫_{-a}^{a} (2/π)√(1-x²) dx` for `0 ≤ a ≤ 1`.
pub fn semicircle_mass(a: f64) -> f64 {
    (2.0 / std::f64::consts::PI) * (a * (1.0 - a * a).sqrt() + a.asin())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn cfg(e: Ensemble, n: usize, samples: usize) -> SamplerConfig {
        SamplerConfig::new(e, n, samples, 7)
    }

    #[test]
    fn univariate_laws() {
        let g = estimate_trace_moment(&cfg(Ensemble::Hermite, 1, 100_000), &Partition::row(2)).unwrap();
        assert!(g.agrees_with(1.0), "{g:?}");
        let l = Ensemble::laguerre(rat(0)).unwrap();
        let e = estimate_trace_moment(&cfg(l, 1, 100_000), &Partition::row(1)).unwrap();
        assert!(e.agrees_with(1.0), "{e:?}");
        let j = Ensemble::jacobi(rat(0), rat(0)).unwrap();
        let e = estimate_trace_moment(&cfg(j, 1, 100_000), &Partition::row(1)).unwrap();
        assert!(e.agrees_with(0.5), "{e:?}");
    }

    #[test]
    fn determinism() {
        let c = cfg(Ensemble::Hermite, 4, 2_000).with_workers(3);
        let a = estimate_trace_moment(&c, &Partition::row(4)).unwrap();
        let b = estimate_trace_moment(&c, &Partition::row(4)).unwrap();
        assert_eq!(a.mean.to_bits(), b.mean.to_bits());
        assert_eq!(a.standard_error.to_bits(), b.standard_error.to_bits());
        assert_eq!(sample_spectrum(&c, 1).unwrap(), sample_spectrum(&c, 1).unwrap());
        assert_ne!(sample_spectrum(&c, 1).unwrap(), sample_spectrum(&c, 2).unwrap());
    }

    #[test]
    fn rejects_bad_configs() {
        let l = Ensemble::laguerre(crate::algebra::ratio(1, 2)).unwrap();
        assert!(sample_spectrum(&cfg(l, 2, 10), 0).is_err());
        assert!(sample_spectrum(&cfg(Ensemble::Hermite, 0, 10), 0).is_err());
        let c = cfg(Ensemble::Hermite, 2, 10);
        assert!(estimate_trace_moment(&c, &Partition::row(12)).is_err());
        assert!(estimate_charpoly_product(&c, &[0.0; 4]).is_err());
    }

    #[test]
    fn jue_spectrum_in_unit_interval() {
        let j = Ensemble::jacobi(rat(1), rat(2)).unwrap();
        let c = cfg(j, 5, 10);
        for w in 0..4 {
            assert!(sample_spectrum(&c, w).unwrap().iter().all(|&x| (0.0..=1.0).contains(&x)));
        }
    }

    #[test]
    fn semicircle_mass_values() {
        assert!((semicircle_mass(1.0) - 1.0).abs() < 1e-12);
        let half = 3f64.sqrt() / (2.0 * std::f64::consts::PI) + 1.0 / 3.0;
        assert!((semicircle_mass(0.5) - half).abs() < 1e-12);
    }

    #[test]
    fn semicircle_bulk_fraction() {
        let c = cfg(Ensemble::Hermite, 64, 1_000);
        let e = estimate_semicircle_fraction(&c, 0.5).unwrap();
        assert!(e.agrees_with(semicircle_mass(0.5)), "{e:?} vs {}", semicircle_mass(0.5));
    }
}
