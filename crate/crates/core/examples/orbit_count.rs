//! Count orbit points w mu with <w mu, H> >= -N for growing N.
//!
//! ```bash
//! cargo run --release --example orbit_count
//! ```

use km_eisenstein::eisenstein::looijenga_count;
use km_eisenstein::rational::rat;
use km_eisenstein::{CartanMatrix, PointH, WeightVector};

fn main() -> km_eisenstein::Result<()> {
    let x = PointH::from_i64s(&[1, 1]);
    for rows in [vec![vec![2, -1], vec![-1, 2]], vec![vec![2, -3], vec![-3, 2]], vec![vec![2, -2], vec![-5, 2]]] {
        let cm = CartanMatrix::new(rows)?;
        println!("A = {:?}", cm.entries());
        for n in [10, 1_000, 1_000_000, 1_000_000_000] {
            let c = looijenga_count(&cm, &WeightVector::rho(2), &x, &rat(n), 10_000)?;
            println!("  N = {n:>10}: count = {:>4}, deepest length = {:>3}, exact = {}", c.count, c.max_length_reached, c.exhausted);
        }
    }
    Ok(())
}
