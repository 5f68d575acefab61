//! Schur polynomial moments, and the change of basis back to power sums.

use ensemble_moments::algebra::Rational;
use ensemble_moments::characters::character;
use ensemble_moments::ensemble::{Ensemble, Mode};
use ensemble_moments::moments::{schur_moment, trace_joint_moment};
use ensemble_moments::partitions::{partitions_of, Partition};

fn main() -> ensemble_moments::error::Result<()> {
    for lam in partitions_of(4)? {
        let m = schur_moment(&Ensemble::Hermite, &lam, Mode::Symbolic)?;
        println!("E[S_({lam})] = {}", m.value);
    }

    // p_μ = Σ_λ χ^λ_μ S_λ, so the moments must agree term by term
    let mu: Partition = "3,1".parse()?;
    let n = 4;
    let mut via_schur = Rational::from_integer(0.into());
    for lam in partitions_of(4)? {
        let s = schur_moment(&Ensemble::Hermite, &lam, Mode::Fixed(n))?;
        let chi = character(&lam, &mu)?;
        via_schur += Rational::from_integer(chi.into()) * s.value.as_scalar().unwrap();
    }
    let direct = trace_joint_moment(&Ensemble::Hermite, &mu, Mode::Fixed(n))?;
    println!("\nN = {n}: E[p_({mu})] = {} directly, {via_schur} via Schur moments", direct.value);
    Ok(())
}
