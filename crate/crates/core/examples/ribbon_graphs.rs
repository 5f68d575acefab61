//! Genus expansion of connected correlators, checked against Wick pairings.

use ensemble_moments::fluctuations::{connected_correlator, genus_coefficient};
use ensemble_moments::partitions::partitions_of;
use ensemble_moments::wick::{face_histogram, wick_connected};

fn main() -> ensemble_moments::error::Result<()> {
    for mu in partitions_of(6)? {
        let c = connected_correlator(&mu)?;
        let a: Vec<String> = (0..=2)
            .map(|g| genus_coefficient(&mu, g).map(|x| x.to_string()))
            .collect::<Result<_, _>>()?;
        let agrees = c.value == wick_connected(&mu)?;
        println!("({mu}): {}  a_g = [{}]  wick agrees: {agrees}", c.value, a.join(", "));
    }
    let hist = face_histogram(&"4".parse()?, false)?;
    println!("\nfaces of the 3 gluings of one 4-valent vertex: {hist:?}");
    Ok(())
}
