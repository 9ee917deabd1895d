//! The axiom-compliance matrix: nine classical axioms checked against five
//! indices over seeded random trials. Weak compliance (never the wrong
//! direction, sometimes unchanged) counts everywhere except transfer
//! sensitivity, which is credited only when strict.
//!
//! Run with `cargo run --example axiom_compliance` (release mode is faster).

use ineq::axioms::{self, Axiom, Verdict};

fn main() -> ineq::Result<()> {
    let trials = 300;
    let seed = 7;
    let kinds = axioms::default_matrix_indices();
    let matrix = axioms::compliance_matrix(&kinds, trials, seed)?;

    print!("{:<22}", "");
    for axiom in Axiom::all_general() {
        print!("{:>6}", axiom.id());
    }
    println!("{:>10}", "score");

    for summary in &matrix.summaries {
        print!("{:<22}", summary.index);
        for axiom in Axiom::all_general() {
            let cell = matrix
                .verdict(&summary.index, axiom)
                .map(|v| match v.verdict {
                    Verdict::Holds => "yes",
                    Verdict::HoldsWeak => "weak",
                    Verdict::Violated => "no",
                })
                .unwrap_or("?");
            print!("{cell:>6}");
        }
        println!("{:>7} of {}", summary.satisfied, summary.out_of);
    }

    println!();
    println!("notes ({trials} trials per cell, seed {seed}):");
    for v in &matrix.verdicts {
        if let Some(detail) = &v.detail {
            println!("  {} {}: {}", v.index, v.axiom.id(), detail);
        }
    }
    Ok(())
}
