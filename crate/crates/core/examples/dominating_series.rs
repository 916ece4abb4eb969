//! Partial sums of sum_w M^l(w) exp(<w rho, H>) for several M, with the
//! largest remaining shell contribution after each truncation length.
//!
//! ```bash
//! cargo run --release --example dominating_series
//! ```

use km_eisenstein::eisenstein::{dominating_series, SpectralParameter, TitsPolicy};
use km_eisenstein::rational::rat;
use km_eisenstein::{CartanMatrix, PointH, PrecisionContext, WeightVector};

fn main() -> km_eisenstein::Result<()> {
    let cm = CartanMatrix::new(vec![vec![2, -3], vec![-3, 2]])?;
    let rho = SpectralParameter::new(WeightVector::rho(2));
    let x = PointH::from_i64s(&[1, 1]);
    let ctx = PrecisionContext::new(30)?;
    for m in [1, 2, 4, 16] {
        let table = dominating_series(&cm, &rho, &x, &rat(m), 40, &ctx, TitsPolicy::default())?;
        let total = table.total().expect("nonempty");
        let settled = table.rows.iter().find(|r| (total - &r.partial_sum).abs().to_f64() < 1e-10).map(|r| r.length);
        println!("M = {m:>2}: S_40 = {}  tail below 1e-10 from length {:?}", total.to_scientific(20), settled);
    }
    Ok(())
}
