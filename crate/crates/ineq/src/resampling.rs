//! Bootstrap precision estimation and grouped-data bias sweeps.
//!
//! The bootstrap resamples survey records (rows, each carrying its weight)
//! uniformly with replacement, evaluates an index on every resample, and
//! summarizes the replicate spread as a standard error and a coefficient of
//! variation. Replicates draw from per-replicate ChaCha12 streams, so results
//! depend only on (data, index, B, seed), never on thread count or schedule.
//!
//! The bias sweep quantile-groups a micro distribution at several group
//! counts and reports each index value against its micro value. Grouping
//! replaces the true maximum with a top-group mean, so relative-to-maximum
//! inequality is always understated on grouped data; the sweep quantifies
//! that understatement as `(micro − grouped) / micro`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::distribution::WeightedDistribution;
use crate::error::{Error, Result};
use crate::indices::IndexKind;

/// Attempts allowed per replicate before the bootstrap gives up; caps total
/// draws at 10·B while keeping the replicate count fixed at B.
const MAX_ATTEMPTS_PER_REPLICATE: u32 = 10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BootstrapSummary {
    pub index: String,
    pub observed: f64,
    pub replicates: u32,
    pub replicate_mean: f64,
    /// Sample standard deviation of the replicate values.
    pub standard_error: f64,
    /// 100·SE / replicate mean; 0 when the standard error is 0.
    pub cv_percent: f64,
    pub seed: u64,
    /// Resamples rejected because the index was undefined on them (each was
    /// redrawn from the same replicate stream).
    pub rejected: u32,
}

fn one_replicate(
    d: &WeightedDistribution,
    kind: &IndexKind,
    seed: u64,
    replicate: u32,
) -> Result<(f64, u32)> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(u64::from(replicate) + 1);
    let n = d.len();
    for attempt in 0..MAX_ATTEMPTS_PER_REPLICATE {
        let records: Vec<_> = (0..n).map(|_| d.records()[rng.gen_range(0..n)]).collect();
        let resample = WeightedDistribution::from_records(records)?;
        if let Ok(value) = kind.compute(&resample) {
            return Ok((value, attempt));
        }
    }
    Err(Error::IndexUndefinedOnResample {
        replicate,
        attempts: MAX_ATTEMPTS_PER_REPLICATE,
    })
}

/// Bootstraps `kind` over `replicates` record-level resamples of `d`.
pub fn bootstrap(
    d: &WeightedDistribution,
    kind: &IndexKind,
    replicates: u32,
    seed: u64,
) -> Result<BootstrapSummary> {
    if replicates < 2 {
        return Err(Error::TooFewReplicates { got: replicates });
    }
    if d.len() < 2 {
        return Err(Error::TooFewRecords { needed: 2, got: d.len() });
    }
    let observed = kind.compute(d)?;
    let outcomes: Vec<(f64, u32)> = (0..replicates)
        .into_par_iter()
        .map(|r| one_replicate(d, kind, seed, r))
        .collect::<Result<_>>()?;
    let rejected = outcomes.iter().map(|&(_, a)| a).sum();
    let b = f64::from(replicates);
    let replicate_mean = outcomes.iter().map(|&(v, _)| v).sum::<f64>() / b;
    let variance = outcomes
        .iter()
        .map(|&(v, _)| (v - replicate_mean).powi(2))
        .sum::<f64>()
        / (b - 1.0);
    let standard_error = variance.sqrt();
    let cv_percent = if standard_error == 0.0 {
        0.0
    } else {
        100.0 * standard_error / replicate_mean
    };
    Ok(BootstrapSummary {
        index: kind.describe(),
        observed,
        replicates,
        replicate_mean,
        standard_error,
        cv_percent,
        seed,
        rejected,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BiasPoint {
    pub groups: usize,
    pub value: f64,
    /// (micro − grouped) / micro; 0 when the micro value is 0.
    pub relative_bias: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BiasCurve {
    pub index: String,
    pub micro: f64,
    pub points: Vec<BiasPoint>,
}

/// Computes each index on quantile-grouped versions of `micro` at every
/// requested group count, returning one bias curve per index.
pub fn bias_sweep(
    micro: &WeightedDistribution,
    group_counts: &[usize],
    kinds: &[IndexKind],
) -> Result<Vec<BiasCurve>> {
    let grouped: Vec<(usize, WeightedDistribution)> = group_counts
        .iter()
        .map(|&g| micro.quantile_group(g).map(|d| (g, d)))
        .collect::<Result<_>>()?;
    kinds
        .iter()
        .map(|kind| {
            let micro_value = kind.compute(micro)?;
            let points = grouped
                .iter()
                .map(|(g, d)| {
                    let value = kind.compute(d)?;
                    let relative_bias = if micro_value == 0.0 {
                        0.0
                    } else {
                        (micro_value - value) / micro_value
                    };
                    Ok(BiasPoint { groups: *g, value, relative_bias })
                })
                .collect::<Result<_>>()?;
            Ok(BiasCurve { index: kind.describe(), micro: micro_value, points })
        })
        .collect()
}
