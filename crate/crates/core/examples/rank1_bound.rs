//! Compare sum_m (1 + (x0 + m)^2 / a^2)^{-(s+1)/2} with 2 + a c_inf(s) on a
//! grid of parameters.
//!
//! ```bash
//! cargo run --release --example rank1_bound
//! ```

use km_eisenstein::eisenstein::rank1_sum_bound;
use km_eisenstein::rational::{format_rational, parse_rational};
use km_eisenstein::PrecisionContext;

fn main() -> km_eisenstein::Result<()> {
    let ctx = PrecisionContext::new(20)?;
    println!("{:>5} {:>5} {:>5} {:>24} {:>24} holds", "s", "a", "x0", "lhs", "rhs");
    for s in ["0.1", "0.5", "1", "2", "5"] {
        for a in ["0.1", "1", "10"] {
            for x0 in ["0", "0.25", "0.5"] {
                let (s, a, x0) = (parse_rational(s)?, parse_rational(a)?, parse_rational(x0)?);
                let b = rank1_sum_bound(&s, &a, &x0, &ctx)?;
                println!(
                    "{:>5} {:>5} {:>5} {:>24} {:>24} {}",
                    format_rational(&s),
                    format_rational(&a),
                    format_rational(&x0),
                    b.lhs.to_scientific(15),
                    b.rhs.to_scientific(15),
                    b.holds
                );
            }
        }
    }
    Ok(())
}
