//! Randomized axiom checks for inequality indices.
//!
//! Each axiom is an executable claim tested over seeded random trials:
//!
//! | id | claim |
//! |----|-------|
//! | P1 | anonymity: permuting records leaves the index unchanged |
//! | P2 | scale invariance: multiplying all incomes by λ > 0 leaves it unchanged |
//! | P3 | replication invariance: multiplying all weights by r ≥ 1 leaves it unchanged |
//! | P4 | progressive transfers never raise it (weak) / strictly lower it (strong) |
//! | P5 | of two order-matched transfers, the one between poorer units lowers it at least as much (weak) / strictly more (strong) |
//! | P6 | non-negativity |
//! | P7 | exactly zero on egalitarian distributions |
//! | P8 | bounded in [0, 1], approaching 1 at maximal concentration |
//! | P9 | the index decomposes exactly into within + between over any partition |
//!
//! P4 and P5 can be queried in weak, strong, or combined form; the combined
//! verdict is `holds` when every trial moved strictly, `holds-weak` when some
//! trials left the index unchanged and none moved the wrong way.
//!
//! A transfer moves ε from every element of a donor unit to the elements of a
//! poorer receiving unit (which gain `(w_from/w_to)·ε` each, preserving total
//! income). Trials draw ε as `1e-3` times the smallest positive gap between
//! adjacent ordered incomes, small enough that the income ordering never
//! changes; transfers that would reorder incomes are rejected by [`Transformation::apply`].

use std::fmt;
use std::str::FromStr;

use rand::distributions::Distribution;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::LogNormal;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::distribution::{GroupedPopulation, Record, WeightedDistribution};
use crate::error::{Error, Result};
use crate::indices::{self, IndexKind};

/// Tolerance for comparing values that should coincide.
pub const EQUALITY_TOLERANCE: f64 = 1e-9;

/// Band separating a genuine index movement from accumulated rounding. The
/// trial generators keep true movements above 1e-12 and rounding noise stays
/// below 1e-15, so the band has two decades of margin on either side.
const NOISE_BAND: f64 = 1e-13;

/// How strictly a transfer axiom is interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strength {
    Weak,
    Strong,
    General,
}

/// A checkable axiom. P4 and P5 carry their interpretation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    Anonymity,
    ScaleInvariance,
    ReplicationInvariance,
    Transfers(Strength),
    TransferSensitivity(Strength),
    NonNegativity,
    EgalitarianZero,
    UpperBound,
    Decomposability,
}

impl Axiom {
    /// The nine axioms in combined form, the compliance-matrix columns.
    pub fn all_general() -> [Axiom; 9] {
        [
            Axiom::Anonymity,
            Axiom::ScaleInvariance,
            Axiom::ReplicationInvariance,
            Axiom::Transfers(Strength::General),
            Axiom::TransferSensitivity(Strength::General),
            Axiom::NonNegativity,
            Axiom::EgalitarianZero,
            Axiom::UpperBound,
            Axiom::Decomposability,
        ]
    }

    pub fn id(&self) -> String {
        let qualify = |base: &str, s: &Strength| match s {
            Strength::Weak => format!("{base}-weak"),
            Strength::Strong => format!("{base}-strong"),
            Strength::General => base.to_string(),
        };
        match self {
            Axiom::Anonymity => "P1".into(),
            Axiom::ScaleInvariance => "P2".into(),
            Axiom::ReplicationInvariance => "P3".into(),
            Axiom::Transfers(s) => qualify("P4", s),
            Axiom::TransferSensitivity(s) => qualify("P5", s),
            Axiom::NonNegativity => "P6".into(),
            Axiom::EgalitarianZero => "P7".into(),
            Axiom::UpperBound => "P8".into(),
            Axiom::Decomposability => "P9".into(),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Axiom::Anonymity => "anonymity",
            Axiom::ScaleInvariance => "scale invariance",
            Axiom::ReplicationInvariance => "replication invariance",
            Axiom::Transfers(_) => "progressive transfers",
            Axiom::TransferSensitivity(_) => "transfer sensitivity",
            Axiom::NonNegativity => "non-negativity",
            Axiom::EgalitarianZero => "zero at equality",
            Axiom::UpperBound => "bounded towards one",
            Axiom::Decomposability => "additive decomposability",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl Serialize for Axiom {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.id())
    }
}

impl FromStr for Axiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "p1" => Ok(Axiom::Anonymity),
            "p2" => Ok(Axiom::ScaleInvariance),
            "p3" => Ok(Axiom::ReplicationInvariance),
            "p4" => Ok(Axiom::Transfers(Strength::General)),
            "p4-weak" => Ok(Axiom::Transfers(Strength::Weak)),
            "p4-strong" => Ok(Axiom::Transfers(Strength::Strong)),
            "p5" => Ok(Axiom::TransferSensitivity(Strength::General)),
            "p5-weak" => Ok(Axiom::TransferSensitivity(Strength::Weak)),
            "p5-strong" => Ok(Axiom::TransferSensitivity(Strength::Strong)),
            "p6" => Ok(Axiom::NonNegativity),
            "p7" => Ok(Axiom::EgalitarianZero),
            "p8" => Ok(Axiom::UpperBound),
            "p9" => Ok(Axiom::Decomposability),
            _ => Err(Error::UnknownAxiom(s.to_string())),
        }
    }
}

/// Moves ε from every element of record `from` to the elements of record
/// `to`; receivers gain `(w_from/w_to)·ε` each, so total income is preserved.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Transfer {
    pub from: usize,
    pub to: usize,
    pub epsilon: f64,
}

/// A distribution transformation used by the axiom trials.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Transformation {
    Permute { permutation: Vec<usize> },
    Scale { factor: f64 },
    Replicate { factor: u32 },
    Transfer(Transfer),
}

impl Transformation {
    pub fn apply(&self, d: &WeightedDistribution) -> Result<WeightedDistribution> {
        match self {
            Transformation::Permute { permutation } => {
                let n = d.len();
                let mut seen = vec![false; n];
                if permutation.len() != n
                    || permutation.iter().any(|&i| i >= n || std::mem::replace(&mut seen[i], true))
                {
                    return Err(Error::InvalidTransformation(
                        "permutation must be a bijection on the record positions".into(),
                    ));
                }
                WeightedDistribution::from_records(
                    permutation.iter().map(|&i| d.records()[i]).collect(),
                )
            }
            Transformation::Scale { factor } => {
                if !factor.is_finite() || *factor <= 0.0 {
                    return Err(Error::InvalidTransformation(
                        "scale factor must be positive".into(),
                    ));
                }
                WeightedDistribution::from_records(
                    d.records().iter().map(|r| Record::new(r.income * factor, r.weight)).collect(),
                )
            }
            Transformation::Replicate { factor } => {
                if *factor == 0 {
                    return Err(Error::InvalidTransformation(
                        "replication factor must be at least 1".into(),
                    ));
                }
                WeightedDistribution::from_records(
                    d.records()
                        .iter()
                        .map(|r| Record::new(r.income, r.weight * f64::from(*factor)))
                        .collect(),
                )
            }
            Transformation::Transfer(t) => {
                let n = d.len();
                if t.from >= n || t.to >= n || t.from == t.to {
                    return Err(Error::InvalidTransformation(
                        "transfer endpoints must be two distinct record positions".into(),
                    ));
                }
                if !t.epsilon.is_finite() || t.epsilon <= 0.0 {
                    return Err(Error::InvalidTransformation(
                        "transfer amount must be positive".into(),
                    ));
                }
                let donor = d.records()[t.from];
                let receiver = d.records()[t.to];
                if donor.income <= receiver.income {
                    return Err(Error::OrderBreakingTransfer);
                }
                if donor.income - t.epsilon < 0.0 {
                    return Err(Error::NegativeResultingIncome);
                }
                let mut records = d.records().to_vec();
                records[t.from].income = donor.income - t.epsilon;
                records[t.to].income =
                    receiver.income + (donor.weight / receiver.weight) * t.epsilon;
                let out = WeightedDistribution::from_records(records)?;
                if rank_order(d) != rank_order(&out) {
                    return Err(Error::OrderBreakingTransfer);
                }
                Ok(out)
            }
        }
    }
}

// Record positions sorted by (income, position); transfers must keep this.
fn rank_order(d: &WeightedDistribution) -> Vec<usize> {
    let mut order: Vec<usize> = (0..d.len()).collect();
    order.sort_by(|&a, &b| {
        d.records()[a]
            .income
            .partial_cmp(&d.records()[b].income)
            .expect("incomes are finite")
            .then(a.cmp(&b))
    });
    order
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Holds,
    HoldsWeak,
    Violated,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::HoldsWeak => "holds-weak",
            Verdict::Violated => "violated",
        })
    }
}

/// The concrete trial substantiating a violation (or a failed strictness
/// claim). Re-running the same seed reproduces it bit for bit.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub trial: u32,
    pub incomes: Vec<f64>,
    pub weights: Vec<f64>,
    pub probe: String,
    pub before: f64,
    pub after: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComplianceVerdict {
    pub index: String,
    pub axiom: Axiom,
    pub verdict: Verdict,
    pub trials: u32,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl ComplianceVerdict {
    fn new(index: &IndexKind, axiom: Axiom, verdict: Verdict, trials: u32, seed: u64) -> Self {
        ComplianceVerdict {
            index: index.describe(),
            axiom,
            verdict,
            trials,
            seed,
            witness: None,
            detail: None,
        }
    }
}

fn witness(
    trial: u32,
    d: &WeightedDistribution,
    probe: String,
    before: f64,
    after: f64,
) -> Witness {
    Witness {
        trial,
        incomes: d.records().iter().map(|r| r.income).collect(),
        weights: d.records().iter().map(|r| r.weight).collect(),
        probe,
        before,
        after,
    }
}

// Per-trial generator stream: independent of execution order and thread
// count, so verdicts and witnesses are reproducible from (seed, trial).
fn trial_rng(seed: u64, trial: u32) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(u64::from(trial) + 1);
    rng
}

fn min_positive_gap(d: &WeightedDistribution) -> Option<f64> {
    let mut incomes: Vec<f64> = d.records().iter().map(|r| r.income).collect();
    incomes.sort_by(|a, b| a.partial_cmp(b).unwrap());
    incomes
        .windows(2)
        .map(|w| w[1] - w[0])
        .filter(|&g| g > 0.0)
        .fold(None, |acc: Option<f64>, g| Some(acc.map_or(g, |m| m.min(g))))
}

/// ε per donor element: small enough that no transfer reorders incomes.
fn transfer_epsilon(d: &WeightedDistribution) -> Option<f64> {
    min_positive_gap(d).map(|g| 1e-3 * g)
}

// Log-normal incomes, integer weights 1..=5, 3..=n_max records. Regenerates
// until the smallest income gap clears 1e-4 of the mean, which keeps true
// transfer effects well above the classification band.
fn random_distribution(rng: &mut ChaCha12Rng, n_max: usize) -> WeightedDistribution {
    let log_normal = LogNormal::new(0.0, 1.0).expect("valid parameters");
    loop {
        let n = rng.gen_range(3..=n_max);
        let records: Vec<Record> = (0..n)
            .map(|_| Record::new(log_normal.sample(rng), f64::from(rng.gen_range(1u32..=5))))
            .collect();
        let d = WeightedDistribution::from_records(records).expect("generated records are valid");
        if let Some(gap) = min_positive_gap(&d) {
            if gap >= 1e-4 * d.mean() {
                return d;
            }
        }
    }
}

// A progressive transfer inside d. With `from_max` the donor is the unique
// maximum record; otherwise both endpoints sit strictly below the maximum.
// None means d cannot host the requested transfer and should be regenerated.
fn propose_transfer(
    rng: &mut ChaCha12Rng,
    d: &WeightedDistribution,
    from_max: bool,
) -> Option<Transfer> {
    let epsilon = transfer_epsilon(d)?;
    let max = d.max_income();
    let at_max: Vec<usize> =
        (0..d.len()).filter(|&i| d.records()[i].income == max).collect();
    if from_max {
        if at_max.len() != 1 {
            return None;
        }
        let from = at_max[0];
        let below: Vec<usize> = (0..d.len()).filter(|&i| i != from).collect();
        let to = *below.choose(rng)?;
        return Some(Transfer { from, to, epsilon });
    }
    let interior: Vec<usize> =
        (0..d.len()).filter(|&i| d.records()[i].income < max).collect();
    for _ in 0..32 {
        let a = *interior.choose(rng)?;
        let b = *interior.choose(rng)?;
        let (xa, xb) = (d.records()[a].income, d.records()[b].income);
        if xa == xb {
            continue;
        }
        let (from, to) = if xa > xb { (a, b) } else { (b, a) };
        return Some(Transfer { from, to, epsilon });
    }
    None
}

/// Runs `trials` seeded trials of one axiom against one index.
pub fn check_axiom(
    index: &IndexKind,
    axiom: Axiom,
    trials: u32,
    seed: u64,
) -> Result<ComplianceVerdict> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    match axiom {
        Axiom::Anonymity => check_equality(index, axiom, trials, seed, |rng, d| {
            let mut permutation: Vec<usize> = (0..d.len()).collect();
            permutation.shuffle(rng);
            let probe = format!("permutation {permutation:?}");
            Ok((Transformation::Permute { permutation }.apply(d)?, probe))
        }),
        Axiom::ScaleInvariance => check_equality(index, axiom, trials, seed, |rng, d| {
            let factor = 10f64.powf(rng.gen_range(-3.0..3.0));
            Ok((Transformation::Scale { factor }.apply(d)?, format!("scale by {factor}")))
        }),
        Axiom::ReplicationInvariance => check_equality(index, axiom, trials, seed, |rng, d| {
            let factor = rng.gen_range(2u32..=5);
            Ok((Transformation::Replicate { factor }.apply(d)?, format!("replicate weights x{factor}")))
        }),
        Axiom::Transfers(strength) => check_transfers(index, strength, trials, seed),
        Axiom::TransferSensitivity(strength) => check_sensitivity(index, strength, trials, seed),
        Axiom::NonNegativity => check_non_negativity(index, trials, seed),
        Axiom::EgalitarianZero => check_egalitarian_zero(index, trials, seed),
        Axiom::UpperBound => check_upper_bound(index, trials, seed),
        Axiom::Decomposability => check_decomposability(index, trials, seed),
    }
}

fn check_equality<F>(
    index: &IndexKind,
    axiom: Axiom,
    trials: u32,
    seed: u64,
    transform: F,
) -> Result<ComplianceVerdict>
where
    F: Fn(&mut ChaCha12Rng, &WeightedDistribution) -> Result<(WeightedDistribution, String)>,
{
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let d = random_distribution(&mut rng, 50);
        let (transformed, probe) = transform(&mut rng, &d)?;
        let before = index.compute(&d)?;
        let after = index.compute(&transformed)?;
        if (after - before).abs() > EQUALITY_TOLERANCE {
            let mut v = ComplianceVerdict::new(index, axiom, Verdict::Violated, trials, seed);
            v.witness = Some(witness(trial, &d, probe, before, after));
            return Ok(v);
        }
    }
    Ok(ComplianceVerdict::new(index, axiom, Verdict::Holds, trials, seed))
}

fn check_transfers(
    index: &IndexKind,
    strength: Strength,
    trials: u32,
    seed: u64,
) -> Result<ComplianceVerdict> {
    let axiom = Axiom::Transfers(strength);
    let mut equal_witness: Option<Witness> = None;
    let mut strict_from_max = 0u32;
    let mut equalities = 0u32;
    let mut equalities_all_interior = true;
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        // Every third trial the donor is the maximum unit, so the regime
        // where relative-to-maximum distances genuinely move gets exercised.
        let from_max = trial % 3 == 0;
        let (d, transfer) = loop {
            let d = random_distribution(&mut rng, 50);
            if let Some(t) = propose_transfer(&mut rng, &d, from_max) {
                break (d, t);
            }
        };
        let before = index.compute(&d)?;
        let after = index.compute(&Transformation::Transfer(transfer).apply(&d)?)?;
        let delta = after - before;
        let probe = format!(
            "transfer eps={} from record {} to record {}",
            transfer.epsilon, transfer.from, transfer.to
        );
        if delta > NOISE_BAND {
            let mut v = ComplianceVerdict::new(index, axiom, Verdict::Violated, trials, seed);
            v.witness = Some(witness(trial, &d, probe, before, after));
            return Ok(v);
        } else if delta < -NOISE_BAND {
            if from_max {
                strict_from_max += 1;
            }
        } else {
            equalities += 1;
            if from_max {
                equalities_all_interior = false;
            }
            if equal_witness.is_none() {
                equal_witness = Some(witness(trial, &d, probe, before, after));
            }
        }
    }
    let mut v = match (strength, equalities) {
        (Strength::Weak, _) => ComplianceVerdict::new(index, axiom, Verdict::Holds, trials, seed),
        (Strength::Strong, 0) | (Strength::General, 0) => {
            ComplianceVerdict::new(index, axiom, Verdict::Holds, trials, seed)
        }
        (Strength::Strong, _) => {
            let mut v = ComplianceVerdict::new(index, axiom, Verdict::Violated, trials, seed);
            v.witness = equal_witness.take();
            v.detail = Some("some transfers left the index unchanged".into());
            v
        }
        (Strength::General, _) => {
            ComplianceVerdict::new(index, axiom, Verdict::HoldsWeak, trials, seed)
        }
    };
    if v.verdict == Verdict::HoldsWeak && equalities_all_interior && strict_from_max > 0 {
        v.detail = Some(
            "unchanged for transfers among non-maximum units; strictly lower whenever the donor holds the maximum"
                .into(),
        );
    }
    Ok(v)
}

// Plants two donor/receiver pairs with the same income gap, the upper pair
// strictly richer, neither donor at the maximum, plus a few interleaved
// units. Spacing floors keep every genuine index movement above the
// classification band.
fn planted_pairs(rng: &mut ChaCha12Rng) -> (WeightedDistribution, Transfer, Transfer) {
    let log_normal = LogNormal::new(0.0, 1.0).expect("valid parameters");
    let (lo, hi) = loop {
        let a: f64 = log_normal.sample(rng);
        let b: f64 = log_normal.sample(rng);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        if hi >= 1.5 * lo {
            break (lo, hi);
        }
    };
    let gap = 0.4 * (hi - lo);
    let cap = hi + gap + (hi - lo);
    let mut incomes = vec![lo, lo + gap, hi, hi + gap, cap];
    let extras = rng.gen_range(0usize..=6);
    let mut attempts = 0;
    while incomes.len() < 5 + extras && attempts < 100 {
        attempts += 1;
        let v = rng.gen_range(0.002 * cap..0.998 * cap);
        if incomes.iter().all(|&x| (x - v).abs() > 1e-3 * cap) {
            incomes.push(v);
        }
    }
    let d = WeightedDistribution::unweighted(&incomes).expect("positive incomes");
    let epsilon = transfer_epsilon(&d).expect("distinct incomes by construction");
    (
        d,
        Transfer { from: 1, to: 0, epsilon },
        Transfer { from: 3, to: 2, epsilon },
    )
}

fn check_sensitivity(
    index: &IndexKind,
    strength: Strength,
    trials: u32,
    seed: u64,
) -> Result<ComplianceVerdict> {
    let axiom = Axiom::TransferSensitivity(strength);
    let mut equal_witness: Option<Witness> = None;
    let mut equalities = 0u32;
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let (d, lower, upper) = planted_pairs(&mut rng);
        let after_lower = index.compute(&Transformation::Transfer(lower).apply(&d)?)?;
        let after_upper = index.compute(&Transformation::Transfer(upper).apply(&d)?)?;
        let diff = after_lower - after_upper;
        let probe = format!(
            "matched transfers eps={}: records 1->0 (poorer pair) vs 3->2 (richer pair)",
            lower.epsilon
        );
        if diff > NOISE_BAND {
            let mut v = ComplianceVerdict::new(index, axiom, Verdict::Violated, trials, seed);
            v.witness = Some(witness(trial, &d, probe, after_lower, after_upper));
            v.detail = Some("the transfer between poorer units lowered the index less".into());
            return Ok(v);
        } else if diff >= -NOISE_BAND {
            equalities += 1;
            if equal_witness.is_none() {
                equal_witness = Some(witness(trial, &d, probe, after_lower, after_upper));
            }
        }
    }
    Ok(match (strength, equalities) {
        (Strength::Weak, _) => ComplianceVerdict::new(index, axiom, Verdict::Holds, trials, seed),
        (Strength::Strong, 0) | (Strength::General, 0) => {
            ComplianceVerdict::new(index, axiom, Verdict::Holds, trials, seed)
        }
        (Strength::Strong, _) => {
            let mut v = ComplianceVerdict::new(index, axiom, Verdict::Violated, trials, seed);
            v.witness = equal_witness;
            v.detail = Some("both transfers lowered the index by the same amount".into());
            v
        }
        (Strength::General, _) => {
            let mut v = ComplianceVerdict::new(index, axiom, Verdict::HoldsWeak, trials, seed);
            v.detail =
                Some("order-matched transfers always move the index identically".into());
            v
        }
    })
}

fn check_non_negativity(index: &IndexKind, trials: u32, seed: u64) -> Result<ComplianceVerdict> {
    let axiom = Axiom::NonNegativity;
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let d = random_distribution(&mut rng, 50);
        let value = index.compute(&d)?;
        if value < -EQUALITY_TOLERANCE {
            let mut v = ComplianceVerdict::new(index, axiom, Verdict::Violated, trials, seed);
            v.witness = Some(witness(trial, &d, "random distribution".into(), value, value));
            return Ok(v);
        }
    }
    Ok(ComplianceVerdict::new(index, axiom, Verdict::Holds, trials, seed))
}

fn check_egalitarian_zero(index: &IndexKind, trials: u32, seed: u64) -> Result<ComplianceVerdict> {
    let axiom = Axiom::EgalitarianZero;
    let log_normal = LogNormal::new(0.0, 1.0).expect("valid parameters");
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let n = rng.gen_range(3usize..=50);
        let value: f64 = log_normal.sample(&mut rng);
        let records: Vec<Record> =
            (0..n).map(|_| Record::new(value, f64::from(rng.gen_range(1u32..=5)))).collect();
        let d = WeightedDistribution::from_records(records).expect("constant records are valid");
        let observed = index.compute(&d)?;
        if observed.abs() > EQUALITY_TOLERANCE {
            let mut v = ComplianceVerdict::new(index, axiom, Verdict::Violated, trials, seed);
            v.witness =
                Some(witness(trial, &d, "egalitarian distribution".into(), observed, observed));
            return Ok(v);
        }
    }
    Ok(ComplianceVerdict::new(index, axiom, Verdict::Holds, trials, seed))
}

fn check_upper_bound(index: &IndexKind, trials: u32, seed: u64) -> Result<ComplianceVerdict> {
    let axiom = Axiom::UpperBound;
    let log_normal = LogNormal::new(0.0, 1.0).expect("valid parameters");
    // Random maximal-concentration configurations must stay in [0, 1].
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let n = rng.gen_range(3usize..=50);
        let holder = log_normal.sample(&mut rng);
        let mut records: Vec<Record> = (0..n - 1)
            .map(|_| Record::new(0.0, f64::from(rng.gen_range(1u32..=5))))
            .collect();
        records.push(Record::new(holder, f64::from(rng.gen_range(1u32..=5))));
        let d = WeightedDistribution::from_records(records).expect("valid records");
        match index.compute(&d) {
            Err(e) => {
                let mut v = ComplianceVerdict::new(index, axiom, Verdict::Violated, trials, seed);
                v.witness = Some(witness(trial, &d, "one unit holds all income".into(), 0.0, 0.0));
                v.detail = Some(format!("undefined at maximal concentration: {e}"));
                return Ok(v);
            }
            Ok(value) => {
                if !(-EQUALITY_TOLERANCE..=1.0 + EQUALITY_TOLERANCE).contains(&value) {
                    let mut v =
                        ComplianceVerdict::new(index, axiom, Verdict::Violated, trials, seed);
                    v.witness =
                        Some(witness(trial, &d, "one unit holds all income".into(), value, value));
                    v.detail = Some("value escapes [0, 1]".into());
                    return Ok(v);
                }
            }
        }
    }
    // Growing populations with a single income holder must march towards 1.
    let mut previous = f64::NEG_INFINITY;
    let mut last = 0.0;
    for &n in &[8usize, 64, 512, 4096] {
        let mut records = vec![Record::new(0.0, 1.0); n - 1];
        records.push(Record::new(5.0, 1.0));
        let d = WeightedDistribution::from_records(records).expect("valid records");
        match index.compute(&d) {
            Err(e) => {
                let mut v = ComplianceVerdict::new(index, axiom, Verdict::Violated, trials, seed);
                v.detail = Some(format!("undefined at maximal concentration (n = {n}): {e}"));
                return Ok(v);
            }
            Ok(value) => {
                if value < previous - EQUALITY_TOLERANCE {
                    let mut v =
                        ComplianceVerdict::new(index, axiom, Verdict::Violated, trials, seed);
                    v.detail = Some(format!(
                        "value fell from {previous} to {value} while concentration grew (n = {n})"
                    ));
                    return Ok(v);
                }
                previous = value;
                last = value;
            }
        }
    }
    if last < 0.99 {
        let mut v = ComplianceVerdict::new(index, axiom, Verdict::Violated, trials, seed);
        v.detail = Some(format!("value reaches only {last} at maximal concentration"));
        return Ok(v);
    }
    Ok(ComplianceVerdict::new(index, axiom, Verdict::Holds, trials, seed))
}

// Random partition of a random distribution into 2..=5 labeled groups.
fn random_partition(rng: &mut ChaCha12Rng) -> GroupedPopulation {
    loop {
        let d = random_distribution(rng, 50);
        if d.len() < 6 {
            continue;
        }
        let k = rng.gen_range(2usize..=5);
        let labels: Vec<String> =
            (0..d.len()).map(|_| format!("g{}", rng.gen_range(0..k))).collect();
        let distinct = {
            let mut set: Vec<&String> = Vec::new();
            for l in &labels {
                if !set.contains(&l) {
                    set.push(l);
                }
            }
            set.len()
        };
        if distinct < 2 {
            continue;
        }
        let records = labels.into_iter().zip(d.records().iter().copied());
        return GroupedPopulation::from_labeled_records(records)
            .expect("labels and records are non-empty");
    }
}

// GE(α) splits exactly with within-group weights s_k·(x̄_k/x̄)^α and a
// between term over group means.
fn ge_additive_residual(gp: &GroupedPopulation, alpha: f64) -> Result<f64> {
    let pooled = gp.pooled();
    let total = indices::generalized_entropy(&pooled, alpha)?;
    let mean = pooled.mean();
    let m = pooled.total_weight();
    let mut within = 0.0;
    for (_, d) in gp.groups() {
        let share = d.total_weight() / m;
        within += share * (d.mean() / mean).powf(alpha) * indices::generalized_entropy(d, alpha)?;
    }
    let means = WeightedDistribution::from_pairs(
        gp.groups().iter().map(|(_, d)| (d.mean(), d.total_weight())),
    )?;
    let between = indices::generalized_entropy(&means, alpha)?;
    Ok(total - within - between)
}

// Atkinson aggregates exactly through equally-distributed equivalents:
// the EDE of the pooled data equals the EDE of the per-group EDEs.
fn atkinson_aggregation_residual(gp: &GroupedPopulation, epsilon: f64) -> Result<f64> {
    let pooled = gp.pooled();
    let direct = indices::equally_distributed_equivalent(&pooled, epsilon)?;
    let representatives = WeightedDistribution::from_pairs(
        gp.groups()
            .iter()
            .map(|(_, d)| {
                indices::equally_distributed_equivalent(d, epsilon).map(|e| (e, d.total_weight()))
            })
            .collect::<Result<Vec<_>>>()?,
    )?;
    let aggregated = indices::equally_distributed_equivalent(&representatives, epsilon)?;
    Ok((direct - aggregated) / pooled.mean())
}

// The candidate additive scheme for rank-based indices: within-group terms
// weighted by population times income share, between over group means.
fn means_scheme_residual(gp: &GroupedPopulation, index: &IndexKind) -> Result<f64> {
    let pooled = gp.pooled();
    let total = index.compute(&pooled)?;
    let m = pooled.total_weight();
    let t = pooled.total_income();
    let mut within = 0.0;
    for (_, d) in gp.groups() {
        within += (d.total_weight() / m) * (d.total_income() / t) * index.compute(d)?;
    }
    let means = WeightedDistribution::from_pairs(
        gp.groups().iter().map(|(_, d)| (d.mean(), d.total_weight())),
    )?;
    let between = index.compute(&means)?;
    Ok(total - within - between)
}

fn check_decomposability(index: &IndexKind, trials: u32, seed: u64) -> Result<ComplianceVerdict> {
    let axiom = Axiom::Decomposability;
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let gp = random_partition(&mut rng);
        let outcome: std::result::Result<f64, String> = match *index {
            IndexKind::Idrm => match crate::decomposition::decompose(&gp) {
                Ok(report) => Ok(report.residual),
                Err(Error::InvariantBreach { residual, .. }) => Err(format!(
                    "within/between residual {residual:e} under the group-maximum scheme"
                )),
                Err(e) => return Err(e),
            },
            IndexKind::Theil => Ok(ge_additive_residual(&gp, 1.0)?),
            IndexKind::Mld => Ok(ge_additive_residual(&gp, 0.0)?),
            IndexKind::GeneralizedEntropy { alpha } => Ok(ge_additive_residual(&gp, alpha)?),
            IndexKind::Atkinson { epsilon } => Ok(atkinson_aggregation_residual(&gp, epsilon)?),
            _ => {
                let residual = means_scheme_residual(&gp, index)?;
                if residual.abs() > EQUALITY_TOLERANCE {
                    Err(format!(
                        "no additive within/between split reproduces the total under the share-weighted scheme; residual {residual:e}"
                    ))
                } else {
                    Ok(residual)
                }
            }
        };
        match outcome {
            Ok(residual) if residual.abs() <= EQUALITY_TOLERANCE => {}
            Ok(residual) => {
                let mut v = ComplianceVerdict::new(index, axiom, Verdict::Violated, trials, seed);
                v.witness = Some(witness(
                    trial,
                    &gp.pooled(),
                    partition_probe(&gp),
                    residual,
                    residual,
                ));
                v.detail = Some(format!("decomposition residual {residual:e}"));
                return Ok(v);
            }
            Err(detail) => {
                let mut v = ComplianceVerdict::new(index, axiom, Verdict::Violated, trials, seed);
                v.witness =
                    Some(witness(trial, &gp.pooled(), partition_probe(&gp), 0.0, 0.0));
                v.detail = Some(detail);
                return Ok(v);
            }
        }
    }
    let mut v = ComplianceVerdict::new(index, axiom, Verdict::Holds, trials, seed);
    if matches!(index, IndexKind::Atkinson { .. }) {
        v.detail = Some(
            "aggregates exactly through equally-distributed equivalents (multiplicative, not additive)"
                .into(),
        );
    }
    Ok(v)
}

fn partition_probe(gp: &GroupedPopulation) -> String {
    let sizes: Vec<String> =
        gp.groups().iter().map(|(l, d)| format!("{l}:{}", d.len())).collect();
    format!("partition {{{}}}", sizes.join(", "))
}

/// One index's row of the compliance matrix.
#[derive(Debug, Clone, Serialize)]
pub struct MatrixSummary {
    pub index: String,
    /// Number of the nine axioms credited. Weak compliance counts everywhere
    /// except transfer sensitivity, which is conventionally credited only in
    /// its strict form.
    pub satisfied: usize,
    pub out_of: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComplianceMatrix {
    pub trials: u32,
    pub seed: u64,
    pub verdicts: Vec<ComplianceVerdict>,
    pub summaries: Vec<MatrixSummary>,
}

impl ComplianceMatrix {
    pub fn verdict(&self, index_id: &str, axiom: Axiom) -> Option<&ComplianceVerdict> {
        self.verdicts
            .iter()
            .find(|v| v.axiom == axiom && v.index.starts_with(index_id))
    }
}

/// The default matrix rows.
pub fn default_matrix_indices() -> Vec<IndexKind> {
    vec![
        IndexKind::Idrm,
        IndexKind::Gini,
        IndexKind::Theil,
        IndexKind::Mld,
        IndexKind::Atkinson { epsilon: indices::DEFAULT_EPSILON },
    ]
}

/// Checks every index against all nine axioms. Cells are independent, so the
/// matrix is computed in parallel; output depends only on (indices, trials,
/// seed).
pub fn compliance_matrix(
    kinds: &[IndexKind],
    trials: u32,
    seed: u64,
) -> Result<ComplianceMatrix> {
    if trials == 0 {
        return Err(Error::NoTrials);
    }
    let cells: Vec<(IndexKind, Axiom)> = kinds
        .iter()
        .flat_map(|k| Axiom::all_general().into_iter().map(move |a| (*k, a)))
        .collect();
    let verdicts: Vec<ComplianceVerdict> = cells
        .par_iter()
        .map(|(kind, axiom)| check_axiom(kind, *axiom, trials, seed))
        .collect::<Result<_>>()?;
    let summaries = kinds
        .iter()
        .map(|k| {
            let satisfied = verdicts
                .iter()
                .filter(|v| v.index == k.describe())
                .filter(|v| match v.verdict {
                    Verdict::Holds => true,
                    Verdict::HoldsWeak => {
                        !matches!(v.axiom, Axiom::TransferSensitivity(_))
                    }
                    Verdict::Violated => false,
                })
                .count();
            MatrixSummary { index: k.describe(), satisfied, out_of: 9 }
        })
        .collect();
    Ok(ComplianceMatrix { trials, seed, verdicts, summaries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn five() -> WeightedDistribution {
        WeightedDistribution::unweighted(&[0.0, 10.0, 25.0, 50.0, 80.0]).unwrap()
    }

    #[test]
    fn transfer_moves_weighted_amounts() {
        // Donor weight 2, receiver weight 1: each receiver element gains 2ε.
        let d = WeightedDistribution::from_pairs([(10.0, 1.0), (40.0, 2.0)]).unwrap();
        let out = Transformation::Transfer(Transfer { from: 1, to: 0, epsilon: 3.0 })
            .apply(&d)
            .unwrap();
        assert_eq!(out.records()[0].income, 16.0);
        assert_eq!(out.records()[1].income, 37.0);
        assert!((out.total_income() - d.total_income()).abs() < 1e-9);
    }

    #[test]
    fn transfer_in_worked_example_leaves_idrm_unchanged() {
        let d = five();
        let out = Transformation::Transfer(Transfer { from: 1, to: 0, epsilon: 4.0 })
            .apply(&d)
            .unwrap();
        let incomes: Vec<f64> = out.records().iter().map(|r| r.income).collect();
        assert_eq!(incomes, vec![4.0, 6.0, 25.0, 50.0, 80.0]);
        let before = indices::idrm(&d).unwrap();
        let after = indices::idrm(&out).unwrap();
        assert!((before - after).abs() < 1e-12);
        assert!(indices::gini(&out).unwrap() < indices::gini(&d).unwrap());
    }

    #[test]
    fn order_breaking_transfers_are_rejected() {
        let d = five();
        // Moving 20 from record 2 (25) to record 0 (0) would push the
        // receiver past the donor.
        let err = Transformation::Transfer(Transfer { from: 2, to: 0, epsilon: 20.0 }).apply(&d);
        assert!(matches!(err, Err(Error::OrderBreakingTransfer)));
        // Upward transfers are not progressive.
        let err = Transformation::Transfer(Transfer { from: 0, to: 1, epsilon: 1.0 }).apply(&d);
        assert!(matches!(err, Err(Error::OrderBreakingTransfer)));
    }

    #[test]
    fn overdraining_transfers_are_rejected() {
        let d = WeightedDistribution::unweighted(&[1.0, 2.0]).unwrap();
        let err = Transformation::Transfer(Transfer { from: 1, to: 0, epsilon: 3.0 }).apply(&d);
        assert!(matches!(err, Err(Error::NegativeResultingIncome)));
    }

    #[test]
    fn invalid_permutations_are_rejected() {
        let d = five();
        let err = Transformation::Permute { permutation: vec![0, 0, 1, 2, 3] }.apply(&d);
        assert!(matches!(err, Err(Error::InvalidTransformation(_))));
    }

    #[test]
    fn axiom_ids_round_trip() {
        for id in ["P1", "P2", "P3", "P4", "P4-weak", "P4-strong", "P5", "P5-weak", "P5-strong", "P6", "P7", "P8", "P9"] {
            let axiom: Axiom = id.parse().unwrap();
            assert_eq!(axiom.id(), id);
        }
        assert!(matches!("P10".parse::<Axiom>(), Err(Error::UnknownAxiom(_))));
    }

    #[test]
    fn verdicts_are_reproducible() {
        let a = check_axiom(&IndexKind::Gini, Axiom::Transfers(Strength::Strong), 40, 9).unwrap();
        let b = check_axiom(&IndexKind::Gini, Axiom::Transfers(Strength::Strong), 40, 9).unwrap();
        assert_eq!(a.verdict, b.verdict);
        assert_eq!(format!("{:?}", a.witness), format!("{:?}", b.witness));
    }

    #[test]
    fn idrm_transfer_verdicts() {
        let weak =
            check_axiom(&IndexKind::Idrm, Axiom::Transfers(Strength::Weak), 60, 7).unwrap();
        assert_eq!(weak.verdict, Verdict::Holds);
        let strong =
            check_axiom(&IndexKind::Idrm, Axiom::Transfers(Strength::Strong), 60, 7).unwrap();
        assert_eq!(strong.verdict, Verdict::Violated);
        assert!(strong.witness.is_some(), "an interior transfer is the witness");
        let general =
            check_axiom(&IndexKind::Idrm, Axiom::Transfers(Strength::General), 60, 7).unwrap();
        assert_eq!(general.verdict, Verdict::HoldsWeak);
    }

    #[test]
    fn gini_transfer_verdicts() {
        let strong =
            check_axiom(&IndexKind::Gini, Axiom::Transfers(Strength::Strong), 60, 7).unwrap();
        assert_eq!(strong.verdict, Verdict::Holds);
    }
}
