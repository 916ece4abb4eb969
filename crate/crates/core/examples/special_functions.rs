//! Evaluate zeta, Gamma_R, c_inf and xi(s)/xi(s+1) at high precision.
//!
//! ```bash
//! cargo run --release --example special_functions -- 50
//! ```

use km_eisenstein::special::{c_infinity, empirical_xi_threshold, gamma_r, xi_ratio, zeta};
use km_eisenstein::{PrecisionContext, Real};

fn main() -> km_eisenstein::Result<()> {
    let digits = std::env::args().nth(1).and_then(|d| d.parse().ok()).unwrap_or(30);
    let ctx = PrecisionContext::new(digits)?;
    let n = |k: i64| Real::from_i64(k, ctx.bits());
    let d = digits as usize;
    println!("zeta(2)      = {}", zeta(&n(2), &ctx)?.to_plain(d));
    println!("pi^2/6       = {}", (Real::pi(ctx.bits()).powi(2) / n(6)).to_plain(d));
    println!("zeta(3)      = {}", zeta(&n(3), &ctx)?.to_plain(d));
    println!("Gamma_R(11)  = {}", gamma_r(&n(11), &ctx)?.to_plain(d));
    println!("c_inf(1)     = {}", c_infinity(&n(1), &ctx)?.to_plain(d));
    println!("c_inf(2)     = {}", c_infinity(&n(2), &ctx)?.to_plain(d));
    for s in [2, 5, 10, 20, 50, 100] {
        println!("xi({s})/xi({}) = {}", s + 1, xi_ratio(&n(s), &ctx)?.to_plain(d));
    }
    match empirical_xi_threshold(200, &ctx)? {
        Some(s0) => println!("xi(s)/xi(s+1) < 1 for every integer s in [{s0}, 200]"),
        None => println!("xi(200)/xi(201) >= 1"),
    }
    Ok(())
}
