//! Shell-by-shell truncated constant term for the hyperbolic matrix
//! [[2,-3],[-3,2]] at lambda = 2 rho and H with alpha_i(H) = 1, as CSV.
//!
//! ```bash
//! cargo run --release --example constant_term -- 20 30
//! ```

use km_eisenstein::eisenstein::{constant_term, SpectralParameter, TitsPolicy};
use km_eisenstein::{CartanMatrix, PointH, PrecisionContext, WeightVector};

fn main() -> km_eisenstein::Result<()> {
    let mut args = std::env::args().skip(1);
    let max_length = args.next().and_then(|a| a.parse().ok()).unwrap_or(20);
    let digits = args.next().and_then(|a| a.parse().ok()).unwrap_or(30);
    let cm = CartanMatrix::new(vec![vec![2, -3], vec![-3, 2]])?;
    let lambda = SpectralParameter::new(WeightVector::from_i64s(&[2, 2]));
    let x = PointH::from_i64s(&[1, 1]);
    let table = constant_term(&cm, &lambda, &x, max_length, &PrecisionContext::new(digits)?, TitsPolicy::default())?;
    print!("{}", table.to_csv());
    Ok(())
}
