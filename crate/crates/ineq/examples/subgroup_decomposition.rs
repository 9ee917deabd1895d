//! Additive subgroup decomposition: the IDRM of a partitioned population
//! splits exactly into a within-group term (each group's own inequality,
//! scaled by its population share and the height of its summit relative to
//! the global one) and a between-group term (inequality of the group maxima
//! alone). The same split tiles recursively through a two-level hierarchy.
//!
//! Run with `cargo run --example subgroup_decomposition`.

use ineq::dataset::Dataset;
use ineq::decomposition;

fn main() -> ineq::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/world_groups.csv");
    let ds = Dataset::from_path(path)?;

    println!("one level (regions):");
    let flat = decomposition::decompose(&ds.grouped()?)?;
    println!(
        "{:<12}{:>10}{:>10}{:>10}{:>10}{:>14}",
        "group", "pop share", "inc share", "max", "idrm", "contribution"
    );
    for g in &flat.groups {
        println!(
            "{:<12}{:>10.4}{:>10.4}{:>10.0}{:>10.4}{:>14.4}",
            g.label, g.population_share, g.income_share, g.group_max, g.idrm, g.within_contribution
        );
    }
    println!();
    println!("within  {:>8.4}", flat.within);
    println!("between {:>8.4}", flat.between);
    println!("total   {:>8.4}   (residual {:.1e})", flat.total, flat.residual);

    println!();
    println!("two levels (region/country):");
    let nested = decomposition::hierarchical_decompose(&ds.hierarchy()?)?;
    for branch in &nested.branches {
        println!(
            "{:<12} contribution {:>7.4} = between {:>7.4} + within {:>7.4}",
            branch.label, branch.contribution, branch.between, branch.within
        );
        for g in &branch.groups {
            println!(
                "  {:<10} idrm {:>7.4}  contributes {:>7.4}",
                g.label, g.idrm, g.within_contribution
            );
        }
    }
    println!();
    println!(
        "branch contributions sum back to the top within term: {:.4} = {:.4}",
        nested.branches.iter().map(|b| b.contribution).sum::<f64>(),
        nested.top.within
    );
    Ok(())
}
