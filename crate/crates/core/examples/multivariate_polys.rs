//! Multivariate orthogonal polynomials and their Schur expansions.

use ensemble_moments::algebra::{rat, ratio};
use ensemble_moments::ensemble::{Ensemble, Mode};
use ensemble_moments::mops::{kappa_coeff, mop_eval, psi_kappa_inverse, verify_dual_cauchy};
use ensemble_moments::partitions::Partition;

fn main() -> ensemble_moments::error::Result<()> {
    let lam: Partition = "2,2".parse()?;
    println!("Hermite Phi_(2,2) in the Schur basis:");
    for nu in lam.subpartitions() {
        if (lam.weight() - nu.weight()) % 2 == 1 {
            continue;
        }
        let k = kappa_coeff(&Ensemble::Hermite, &lam, &nu, Mode::Symbolic)?;
        println!("  S_({nu}): {k}");
    }

    let x = [rat(1), ratio(1, 2), rat(-2)];
    for e in [
        Ensemble::Hermite,
        Ensemble::laguerre(ratio(1, 2))?,
        Ensemble::jacobi(ratio(1, 3), ratio(1, 4))?,
    ] {
        println!("\n{e}");
        println!("  Phi_(2,1)(1, 1/2, -2) = {}", mop_eval(&e, &"2,1".parse()?, &x)?);
        println!("  psi and kappa inverse at N = 4: {}", psi_kappa_inverse(&e, &"3,1".parse()?, 4)?);
        let (l, r) = verify_dual_cauchy(&e, &[rat(3), ratio(7, 2)], &x)?;
        println!("  dual Cauchy: {l} = {r}");
    }
    Ok(())
}
