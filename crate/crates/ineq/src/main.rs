use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ineq::analytics;
use ineq::axioms;
use ineq::dataset::Dataset;
use ineq::decomposition;
use ineq::error::{Error, Result};
use ineq::indices::{self, IndexKind, IndexParams};
use ineq::report::{IndexValue, InputDigest, Report};
use ineq::resampling;

/// Inequality analytics over weighted income distributions, centred on the
/// relative-to-maximum inequality index (IDRM).
#[derive(Parser)]
#[command(name = "ineq", version, about)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct ParamArgs {
    /// Sensitivity parameter for the generalized entropy family.
    #[arg(long, default_value_t = indices::DEFAULT_ALPHA)]
    alpha: f64,
    /// Inequality aversion for the Atkinson index.
    #[arg(long, default_value_t = indices::DEFAULT_EPSILON)]
    epsilon: f64,
    /// Top share cut for the share-ratio Palma, in percent.
    #[arg(long, default_value_t = indices::DEFAULT_TOP_PERCENT)]
    top_percent: f64,
    /// Bottom share cut for the share-ratio Palma, in percent.
    #[arg(long, default_value_t = indices::DEFAULT_BOTTOM_PERCENT)]
    bottom_percent: f64,
}

impl ParamArgs {
    fn params(&self) -> IndexParams {
        IndexParams {
            alpha: self.alpha,
            epsilon: self.epsilon,
            top_percent: self.top_percent,
            bottom_percent: self.bottom_percent,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute inequality indices on a dataset.
    Compute {
        file: PathBuf,
        /// Comma-separated ids: idrm, gini, theil, mld, ge, atkinson,
        /// palma_decile, palma_share.
        #[arg(long, default_value = "idrm,gini,theil,atkinson")]
        index: String,
        /// Quantile-group the data into this many groups before computing.
        #[arg(long)]
        groups: Option<usize>,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Decompose the IDRM into within and between components by group.
    Decompose {
        file: PathBuf,
        /// 1 groups by the first path component; 2 expects two-level paths.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        levels: u8,
    },
    /// Estimate an index's sampling precision by bootstrap resampling.
    Bootstrap {
        file: PathBuf,
        /// Index id to bootstrap.
        #[arg(long, default_value = "idrm")]
        index: String,
        /// Number of replicates.
        #[arg(long = "B", default_value_t = 1000)]
        replicates: u32,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Run the axiom-compliance matrix on internally generated data.
    Axioms {
        /// Comma-separated index ids to check.
        #[arg(long, default_value = "idrm,gini,theil,mld,atkinson")]
        index: String,
        /// Random trials per axiom.
        #[arg(long, default_value_t = 500)]
        trials: u32,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Emit Lorenz curve points, plain and scaled by mean/max.
    Lorenz { file: PathBuf },
    /// Sweep quantile group counts and report grouping bias per index.
    Bias {
        file: PathBuf,
        /// Comma-separated group counts.
        #[arg(long, default_value = "10,20,30,40,50,60,70,80,90,100")]
        groups: String,
        /// Comma-separated index ids.
        #[arg(long, default_value = "idrm,gini,theil,atkinson")]
        index: String,
        #[command(flatten)]
        params: ParamArgs,
    },
}

fn init_threads() -> Result<()> {
    if let Ok(raw) = std::env::var("INEQ_THREADS") {
        let threads: usize = raw
            .trim()
            .parse()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| Error::InvalidThreadCount(raw.clone()))?;
        // Ignore the error from configuring twice; the pool is set once.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    Ok(())
}

fn load(path: &PathBuf) -> Result<Dataset> {
    let ds = Dataset::from_path(path)?;
    for w in ds.warnings() {
        eprintln!("warning: {w}");
    }
    Ok(ds)
}

fn parse_group_counts(list: &str) -> Result<Vec<usize>> {
    let counts: Vec<usize> = list
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse().map_err(|_| Error::InvalidGroupCount))
        .collect::<Result<_>>()?;
    if counts.is_empty() || counts.contains(&0) {
        return Err(Error::InvalidGroupCount);
    }
    Ok(counts)
}

fn build_report(command: Command) -> Result<Report> {
    match command {
        Command::Compute { file, index, groups, params } => {
            let micro = load(&file)?.distribution()?;
            let d = match groups {
                Some(g) => micro.quantile_group(g)?,
                None => micro,
            };
            let kinds = IndexKind::parse_list(&index, &params.params())?;
            let values = kinds
                .iter()
                .map(|k| Ok(IndexValue { kind: *k, value: k.compute(&d)? }))
                .collect::<Result<Vec<_>>>()?;
            Ok(Report::Compute { input: InputDigest::of(&d), groups, values })
        }
        Command::Decompose { file, levels } => {
            let ds = load(&file)?;
            let input = InputDigest::of(&ds.distribution()?);
            let (flat, nested) = match levels {
                1 => (Some(decomposition::decompose(&ds.grouped()?)?), None),
                _ => (None, Some(decomposition::hierarchical_decompose(&ds.hierarchy()?)?)),
            };
            Ok(Report::Decompose { input, levels, flat, nested })
        }
        Command::Bootstrap { file, index, replicates, seed, params } => {
            let d = load(&file)?.distribution()?;
            let kind = IndexKind::from_id(&index, &params.params())?;
            let summary = resampling::bootstrap(&d, &kind, replicates, seed)?;
            Ok(Report::Bootstrap { input: InputDigest::of(&d), summary })
        }
        Command::Axioms { index, trials, seed, params } => {
            let kinds = IndexKind::parse_list(&index, &params.params())?;
            let matrix = axioms::compliance_matrix(&kinds, trials, seed)?;
            Ok(Report::Axioms { matrix })
        }
        Command::Lorenz { file } => {
            let d = load(&file)?.distribution()?;
            let curve = analytics::lorenz(&d)?;
            Ok(Report::lorenz(InputDigest::of(&d), &curve))
        }
        Command::Bias { file, groups, index, params } => {
            let d = load(&file)?.distribution()?;
            let counts = parse_group_counts(&groups)?;
            let kinds = IndexKind::parse_list(&index, &params.params())?;
            let curves = resampling::bias_sweep(&d, &counts, &kinds)?;
            Ok(Report::Bias { input: InputDigest::of(&d), curves })
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    init_threads()?;
    let report = build_report(cli.command)?;
    let text = match cli.format {
        Format::Json => report.to_json()?,
        Format::Csv => report.to_csv()?,
    };
    match cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
