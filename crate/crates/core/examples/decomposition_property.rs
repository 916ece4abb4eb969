//! Check the non-root decomposition condition on several Cartan matrices,
//! print certificates for failures and admissible words where it holds.
//!
//! ```bash
//! cargo run --release --example decomposition_property
//! ```

use km_eisenstein::certificate::{verify_certificate, Certificate};
use km_eisenstein::property::{admissible_word, check_property, verify_commutation_condition, PropertyStatus};
use km_eisenstein::weyl::{enumerate, format_word};
use km_eisenstein::CartanMatrix;

fn main() -> km_eisenstein::Result<()> {
    for rows in [vec![vec![2, -1], vec![-5, 2]], vec![vec![2, -1], vec![-1, 2]]] {
        let cm = CartanMatrix::new(rows)?;
        let report = check_property(&cm, 4);
        if let PropertyStatus::FailsAt { element, decompositions } = &report.status {
            println!("{:?}: fails at w = {}", cm.entries(), format_word(element.word()));
            for d in decompositions {
                for v in &d.violations {
                    println!("  v = {}, beta = {}: alpha = {}, alpha - beta = {}", format_word(d.v.word()), d.beta + 1, v.alpha, v.alpha_minus_beta);
                }
            }
        }
        let cert = Certificate::from_report(&cm, &report);
        println!("  certificate verifies: {}", verify_certificate(&cert)?.valid);
    }

    for (a, b) in [(2, 3), (3, 3), (5, 5)] {
        let cm = CartanMatrix::new(vec![vec![2, -a], vec![-b, 2]])?;
        let report = check_property(&cm, 14);
        let mut words = 0;
        let mut commuting = 0;
        for w in enumerate(&cm, 14).skip(1).flat_map(|s| s.elements) {
            let adm = admissible_word(&cm, &w)?;
            words += 1;
            commuting += usize::from(verify_commutation_condition(&cm, adm.word()));
        }
        println!("a = {a}, b = {b}: holds = {}, admissible words = {words}, with commuting nu's = {commuting}", report.holds());
    }
    Ok(())
}
