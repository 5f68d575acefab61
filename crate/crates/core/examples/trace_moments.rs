//! Joint trace moments for the three ensembles.
//!
//! Run with `cargo run --example trace_moments`.

use ensemble_moments::algebra::{rat, ratio};
use ensemble_moments::ensemble::{Ensemble, Mode};
use ensemble_moments::moments::trace_joint_moment;
use ensemble_moments::partitions::partitions_of;

fn main() -> ensemble_moments::error::Result<()> {
    println!("GUE, partitions of 6");
    for mu in partitions_of(6)? {
        let m = trace_joint_moment(&Ensemble::Hermite, &mu, Mode::Symbolic)?;
        println!("  E[p_({mu})] = {}", m.value);
    }

    let lue = Ensemble::laguerre(ratio(1, 2))?;
    println!("\nLUE with gamma = 1/2");
    for mu in partitions_of(3)? {
        let m = trace_joint_moment(&lue, &mu, Mode::Symbolic)?;
        println!("  E[p_({mu})] = {}", m.value);
    }

    // Jacobi moments only exist at a fixed size
    let jue = Ensemble::jacobi(rat(1), rat(2))?;
    println!("\n{jue}, N = 3");
    for mu in partitions_of(3)? {
        let m = trace_joint_moment(&jue, &mu, Mode::Fixed(3))?;
        println!("  E[p_({mu})] = {}", m.value);
    }
    Ok(())
}
