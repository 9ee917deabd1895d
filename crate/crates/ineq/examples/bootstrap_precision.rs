//! Bootstrap precision: resample survey records with replacement, recompute
//! an index on every replicate, and read its sampling variability off the
//! replicate spread. The coefficient of variation makes precision comparable
//! across indices with different scales.
//!
//! Run with `cargo run --example bootstrap_precision` (release mode is faster).

use ineq::indices::IndexKind;
use ineq::{resampling, WeightedDistribution};
use rand::distributions::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::LogNormal;

fn main() -> ineq::Result<()> {
    // Synthetic household incomes, heavy-tailed like real survey data.
    let mut rng = ChaCha12Rng::seed_from_u64(2024);
    let model = LogNormal::new(10.2, 0.9).expect("valid parameters");
    let incomes: Vec<f64> = (0..5000).map(|_| model.sample(&mut rng)).collect();
    let d = WeightedDistribution::unweighted(&incomes)?;

    let kinds = [
        IndexKind::Idrm,
        IndexKind::Gini,
        IndexKind::Theil,
        IndexKind::Atkinson { epsilon: 2.0 },
    ];
    println!(
        "{:<22}{:>10}{:>12}{:>12}{:>8}",
        "index", "observed", "boot mean", "std error", "cv %"
    );
    for kind in &kinds {
        let s = resampling::bootstrap(&d, kind, 500, 42)?;
        println!(
            "{:<22}{:>10.4}{:>12.4}{:>12.5}{:>8.2}",
            s.index, s.observed, s.replicate_mean, s.standard_error, s.cv_percent
        );
    }

    println!();
    println!("the idrm hangs off a single order statistic (the sample maximum), so");
    println!("its bootstrap spread is driven by whether the top record reappears;");
    println!("averaging indices smooth over the summit and bootstrap tighter.");
    println!("rerunning with the same seed reproduces these numbers bit for bit.");
    Ok(())
}
