//! Validate a generalized Cartan matrix, show its symmetrizer and invariant
//! form, and tabulate the positive roots of small height.
//!
//! ```bash
//! cargo run --example root_system
//! ```

use km_eisenstein::lattice::{is_real_root, norm, pair_coroot, positive_roots_up_to_height, root_string_max};
use km_eisenstein::{CartanMatrix, RootVector, WeightVector};

fn main() -> km_eisenstein::Result<()> {
    let cm = CartanMatrix::new(vec![vec![2, -1], vec![-5, 2]])?;
    println!("A = {:?}", cm.entries());
    println!("symmetrizer d = {:?}", cm.symmetrizer());
    println!("Gram matrix (d_i a_ij) = {:?}", (0..2).map(|i| (0..2).map(|j| cm.gram(i, j)).collect::<Vec<_>>()).collect::<Vec<_>>());
    println!("det A = {}", cm.determinant());

    println!("\nheight  root      kind       norm");
    for root in positive_roots_up_to_height(&cm, 8) {
        let kind = if is_real_root(&cm, &root) { "real" } else { "imaginary" };
        println!("{:>6}  {:<8}  {:<9}  {:>5}", root.height(), root.to_string(), kind, norm(&cm, &root));
    }

    let lambda = WeightVector::from_i64s(&[2, 2]);
    let alpha = RootVector::from_i64s(&[1, 1]);
    println!("\n<2 rho, (a1 + a2)^vee> = {}", pair_coroot(&cm, &lambda, &alpha)?);

    let h = CartanMatrix::new(vec![vec![2, -3], vec![-3, 2]])?;
    let a1 = RootVector::simple(2, 0);
    let a2 = RootVector::simple(2, 1);
    println!("[[2,-3],[-3,2]]: a1 + k a2 is a root for k <= {}", root_string_max(&h, &a1, &a2, 64)?);
    Ok(())
}
