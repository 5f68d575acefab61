//! Fluctuations of Chebyshev linear statistics of the rescaled GUE.

use ensemble_moments::ensemble::Mode;
use ensemble_moments::fluctuations::{xk_cumulant, xk_joint_central_moment};

fn main() -> ensemble_moments::error::Result<()> {
    for ks in [&[3, 3][..], &[2, 2, 2], &[4, 2], &[1, 1, 1, 1, 1, 1]] {
        let m = xk_joint_central_moment(ks, Mode::Symbolic)?;
        println!("E[X{ks:?}] = {m}");
    }
    println!();
    for k in 1..=4 {
        for n in 2..=4 {
            println!("kappa_{n}(X_{k}) = {}", xk_cumulant(k, n)?);
        }
    }
    Ok(())
}
