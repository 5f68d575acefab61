//! Averages of products of characteristic polynomials.

use ensemble_moments::algebra::{rat, ratio};
use ensemble_moments::ensemble::Ensemble;
use ensemble_moments::moments::{charpoly_moment, charpoly_power_moment};
use ensemble_moments::mops::univariate_coeffs;

fn main() -> ensemble_moments::error::Result<()> {
    let gue = Ensemble::Hermite;
    let op = univariate_coeffs(&gue, 4)?;
    println!("E[det(t - M)] for 4x4 GUE has coefficients {:?}", op.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>());

    let t = [rat(0), rat(1), ratio(-1, 2)];
    println!("E[det(-M) det(1 - M) det(-1/2 - M)], N = 3: {}", charpoly_moment(&gue, 3, &t)?);

    let jue = Ensemble::jacobi(ratio(1, 3), ratio(1, 4))?;
    println!("{jue}, N = 3, t = (2, 5): {}", charpoly_moment(&jue, 3, &[rat(2), rat(5)])?);

    // coincident points need the separate equal-point formula
    for p in 1..=3 {
        let c = charpoly_power_moment(&gue, 2, p)?;
        let c: Vec<String> = c.iter().map(|x| x.to_string()).collect();
        println!("E[det(t - M)^{p}], N = 2: [{}]", c.join(", "));
    }
    Ok(())
}
