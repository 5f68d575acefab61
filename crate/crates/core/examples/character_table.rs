//! Prints the character table of S_n (default 5).

use ensemble_moments::characters::{character_table, dim_irrep};

fn main() -> ensemble_moments::error::Result<()> {
    let n = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(5);
    let t = character_table(n)?;
    print!("{:>10}", "");
    for mu in &t.partitions {
        print!("{:>10}", mu.to_string());
    }
    println!("{:>8}", "dim");
    for (lam, row) in t.partitions.iter().zip(&t.values) {
        print!("{:>10}", lam.to_string());
        for v in row {
            print!("{v:>10}");
        }
        println!("{:>8}", dim_irrep(lam));
    }
    Ok(())
}
