//! Enumerate a hyperbolic Weyl group by length, list inversion sets and
//! reduce a point into the fundamental chamber.
//!
//! ```bash
//! cargo run --example weyl_group
//! ```

use km_eisenstein::weyl::{enumerate, format_word, phi_w, rho_minus_w_rho, tits_reduce, TitsClass};
use km_eisenstein::{CartanMatrix, PointH};

fn main() -> km_eisenstein::Result<()> {
    let cm = CartanMatrix::new(vec![vec![2, -2, -2], vec![-2, 2, -2], vec![-2, -2, 2]])?;
    let counts: Vec<usize> = enumerate(&cm, 8).map(|s| s.elements.len()).collect();
    println!("shell sizes up to length 8: {counts:?}");

    for shell in enumerate(&cm, 3).skip(3) {
        for w in shell.elements.iter().take(4) {
            let phi: Vec<String> = phi_w(&cm, w)?.iter().map(ToString::to_string).collect();
            println!("w = {}  Phi_w = {{{}}}  rho - w rho = {}", format_word(w.word()), phi.join(", "), rho_minus_w_rho(&cm, w));
        }
    }

    let h = CartanMatrix::new(vec![vec![2, -3], vec![-3, 2]])?;
    for x in [PointH::from_i64s(&[-1, 3]), PointH::from_i64s(&[0, 0]), PointH::from_i64s(&[-1, -1])] {
        let t = tits_reduce(&h, &x, 200);
        let start: Vec<String> = x.values().iter().map(ToString::to_string).collect();
        if t.class == TitsClass::OutsidePresumed {
            println!("x = [{}]: no dominant point after {} reflections ({:?})", start.join(","), t.word.len(), t.class);
            continue;
        }
        let dominant: Vec<String> = t.point.values().iter().map(ToString::to_string).collect();
        println!("x = [{}] -> [{}] via {} ({:?})", start.join(","), dominant.join(","), format_word(&t.word), t.class);
    }
    Ok(())
}
