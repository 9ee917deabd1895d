//! The IDRM's companion statistics: welfare level U = x̄/x_max, tolerance
//! τ = x_max/x̄ − 1 (how many mean incomes the summit stacks up), and the
//! equivalent income x_MIDE every non-maximum unit would need for the mean
//! to stay put.
//!
//! All four depend only on (total weight, mean, maximum), so a national
//! survey can be summarized by those three numbers. Here: Mexican household
//! income 2022, once with the true survey maximum and once with the top
//! decile mean standing in for it, showing how grouping flattens the summit.
//!
//! Run with `cargo run --example companion_analytics`.

use ineq::{analytics, indices, WeightedDistribution};

/// Rebuilds a two-record distribution with the given summary statistics;
/// every statistic printed below depends only on these three numbers.
fn from_summary(total_weight: f64, mean: f64, max: f64) -> ineq::Result<WeightedDistribution> {
    let rest = (total_weight * mean - max) / (total_weight - 1.0);
    WeightedDistribution::from_pairs([(max, 1.0), (rest, total_weight - 1.0)])
}

fn main() -> ineq::Result<()> {
    let households = 126_014_024.0;
    let mean = 50_309.0;
    let variants = [
        ("micro maximum", 10_702_107.0),
        ("top decile mean", 163_282.0),
    ];

    println!(
        "{:<18}{:>12}{:>12}{:>12}{:>16}",
        "x_max source", "idrm", "welfare U", "tolerance", "x_MIDE"
    );
    for (name, max) in variants {
        let d = from_summary(households, mean, max)?;
        println!(
            "{name:<18}{:>12.4}{:>12.4}{:>12.2}{:>16.4}",
            indices::idrm(&d)?,
            analytics::welfare(&d)?,
            analytics::tolerance_tau(&d)?,
            analytics::x_mide(&d)?,
        );
    }

    println!();
    println!("with the true maximum, the summit stacks 211.73 mean incomes and the");
    println!("welfare reading is 0.0047: society operates at half a percent of the");
    println!("egalitarian optimum. replacing the maximum with a decile mean hides");
    println!("most of that distance (idrm drops from 0.995 to 0.692).");
    println!();
    println!("x_MIDE barely differs from the mean in both variants: spreading the");
    println!("summit's excess over 126 million households moves each by centavos.");
    Ok(())
}
