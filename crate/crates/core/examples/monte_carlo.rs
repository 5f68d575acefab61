//! Sampled moments against exact ones.

use ensemble_moments::algebra::rat;
use ensemble_moments::ensemble::Ensemble;
use ensemble_moments::montecarlo::{estimate_semicircle_fraction, semicircle_mass, SamplerConfig};
use ensemble_moments::verify::{mc_charpoly_check, mc_trace_check};

fn main() -> ensemble_moments::error::Result<()> {
    let samples = 20_000;
    let gue = SamplerConfig::new(Ensemble::Hermite, 6, samples, 1);
    let lue = SamplerConfig::new(Ensemble::laguerre(rat(2))?, 4, samples, 2);
    let checks = [
        mc_trace_check(&gue, &"4".parse()?)?,
        mc_trace_check(&gue, &"2,2".parse()?)?,
        mc_charpoly_check(&gue, &[rat(0), rat(1)])?,
        mc_trace_check(&lue, &"2".parse()?)?,
    ];
    for c in checks {
        println!("{:<50} exact {:>12.4} sampled {:>12.4} ± {:.4} (z = {:+.2})", c.label, c.target, c.estimate, c.se, c.z);
    }
    let big = SamplerConfig::new(Ensemble::Hermite, 48, 500, 3);
    let frac = estimate_semicircle_fraction(&big, 0.5)?;
    println!("\nfraction in [-1/2, 1/2] at N = 48: {:.5} ± {:.5}, limit {:.5}", frac.mean, frac.standard_error, semicircle_mass(0.5));
    Ok(())
}
