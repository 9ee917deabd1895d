//! The five-person worked example: a progressive transfer between two poor
//! units moves rank-based indices but leaves the IDRM untouched, because
//! nobody's average distance to the richest unit changes.
//!
//! Run with `cargo run --example five_person_transfer`.

use ineq::axioms::{Transfer, Transformation};
use ineq::indices::{self, IndexKind};
use ineq::WeightedDistribution;

fn main() -> ineq::Result<()> {
    let before = WeightedDistribution::unweighted(&[0.0, 10.0, 25.0, 50.0, 80.0])?;
    // Move 4 from the second-poorest unit to the poorest one.
    let after =
        Transformation::Transfer(Transfer { from: 1, to: 0, epsilon: 4.0 }).apply(&before)?;

    let kinds = [IndexKind::Gini, IndexKind::Theil, IndexKind::Idrm];
    println!("{:<22}{:>10}{:>10}{:>10}", "distribution", "gini", "theil", "idrm");
    for (name, d) in [("{0, 10, 25, 50, 80}", &before), ("{4, 6, 25, 50, 80}", &after)] {
        print!("{name:<22}");
        for kind in &kinds {
            print!("{:>10.4}", kind.compute(d)?);
        }
        println!();
    }

    println!();
    println!(
        "gini falls by {:.4}, idrm moves by {:.1e}",
        indices::gini(&before)? - indices::gini(&after)?,
        (indices::idrm(&after)? - indices::idrm(&before)?).abs(),
    );
    println!("the transfer reduced dispersion among the poor without touching the summit");
    Ok(())
}
