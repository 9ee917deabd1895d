//! Lorenz curve points plus the scaled variant: multiplying the income axis
//! by δ = x̄/x_max turns the usual relative curve into one whose terminal
//! height is the welfare level U, so the gap 1 − δ at the right edge IS the
//! IDRM.
//!
//! Run with `cargo run --example lorenz_curve`.

use ineq::analytics;
use ineq::dataset::Dataset;
use ineq::indices;

fn main() -> ineq::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/enigh_deciles_2016.csv");
    let d = Dataset::from_path(path)?.distribution()?;
    let curve = analytics::lorenz(&d)?;
    let scaled = curve.scaled_points();

    println!("{:>12}{:>14}{:>16}", "population", "income share", "scaled (x δ)");
    for (p, s) in curve.points.iter().zip(&scaled) {
        println!("{:>12.2}{:>14.6}{:>16.6}", p.population, p.income, s.income);
    }

    let last = scaled.last().expect("curve has points");
    println!();
    println!("delta = mean/max = {:.7}", curve.delta);
    println!("scaled curve ends at {:.7}; its complement {:.7} is the idrm", last.income, 1.0 - last.income);
    assert!((1.0 - last.income - indices::idrm(&d)?).abs() < 1e-12);
    Ok(())
}
