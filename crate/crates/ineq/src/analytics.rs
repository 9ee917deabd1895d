//! Companion analytics for the relative-to-maximum index.
//!
//! These read the same distribution through different lenses:
//!
//! * [`welfare`] — attained share of the maximum, `U = x̄/x_max`, the exact
//!   complement of the index (`U + idrm = 1`).
//! * [`tolerance_tau`] — how many times the mean fits into the gap to the
//!   maximum, `τ = x_max/x̄ − 1`; the relative growth the mean would need to
//!   reach the maximum.
//! * [`x_mide`] — the common income the other `m − 1` elements would need so
//!   that a two-point population `{(x_mide, m − 1), (x_max, 1)}` keeps the
//!   observed mean (and therefore the observed index and welfare).
//! * [`lorenz`] — cumulative population vs. cumulative income shares, plus
//!   the scaled variant whose last ordinate is `δ = x̄/x_max = 1 − idrm`.
//! * [`idrm_via_palma_form`] — the index rewritten around the max-to-min
//!   ratio `P = x₍ₙ₎/x₍₁₎`; an exact identity used as a cross-check.
//! * [`palma_bounds`] — the interval the index must fall in once only `P` and
//!   the tail population shares are known, and the position `NoP ∈ [0, 1]` of
//!   the observed index inside it.

use serde::Serialize;

use crate::distribution::WeightedDistribution;
use crate::error::{Error, Result};
use crate::indices;

/// Welfare as the attained share of the maximum, `x̄/x_max ∈ (0, 1]`.
pub fn welfare(d: &WeightedDistribution) -> Result<f64> {
    if d.max_income() <= 0.0 {
        return Err(Error::UndefinedForZeroMax);
    }
    Ok(d.mean() / d.max_income())
}

/// Tolerance `τ = x_max/x̄ − 1`: zero on constant distributions, grows without
/// bound as the mean falls away from the maximum.
pub fn tolerance_tau(d: &WeightedDistribution) -> Result<f64> {
    if d.mean() <= 0.0 {
        return Err(Error::UndefinedForZeroMean);
    }
    Ok(d.max_income() / d.mean() - 1.0)
}

/// Equivalent income of the non-maximum population:
/// `x_mide = (m·x̄ − x_max)/(m − 1)`.
///
/// The population size `m` is the weight total and may be non-integer. The
/// two-point reconstruction `{(x_mide, m − 1), (x_max, 1)}` preserves the
/// mean exactly, hence also welfare and the index.
pub fn x_mide(d: &WeightedDistribution) -> Result<f64> {
    let m = d.total_weight();
    if m <= 1.0 {
        return Err(Error::SingleElementPopulation);
    }
    if d.max_income() <= 0.0 {
        return Err(Error::UndefinedForZeroMax);
    }
    Ok((m * d.mean() - d.max_income()) / (m - 1.0))
}

/// One Lorenz vertex: cumulative population share against cumulative income
/// share, both in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LorenzPoint {
    pub population: f64,
    pub income: f64,
}

/// Lorenz curve of the ordered distribution. Points run from the poorest
/// record to `(1, 1)`; the origin is implicit. `delta = x̄/x_max` scales the
/// income ordinates so the curve ends at `(1, δ)` instead, making `1 − δ`
/// the relative-to-maximum index.
#[derive(Debug, Clone, Serialize)]
pub struct LorenzCurve {
    pub points: Vec<LorenzPoint>,
    pub delta: f64,
}

impl LorenzCurve {
    /// The same vertices with income ordinates multiplied by `delta`.
    pub fn scaled_points(&self) -> Vec<LorenzPoint> {
        self.points
            .iter()
            .map(|p| LorenzPoint { population: p.population, income: p.income * self.delta })
            .collect()
    }
}

/// Builds the Lorenz curve. Undefined when total income is zero.
pub fn lorenz(d: &WeightedDistribution) -> Result<LorenzCurve> {
    if d.total_income() <= 0.0 {
        return Err(Error::UndefinedForZeroTotal);
    }
    let o = d.ordered();
    let m = o.total_weight();
    let t = o.total_income();
    let points = o
        .records()
        .iter()
        .enumerate()
        .map(|(i, _)| LorenzPoint {
            population: o.cum_weight()[i] / m,
            income: o.cum_income()[i] / t,
        })
        .collect();
    Ok(LorenzCurve { points, delta: d.mean() / d.max_income() })
}

/// The index written around the max-to-min ratio `P = x₍ₙ₎/x₍₁₎`:
///
/// `idrm = 1 − p₍ₙ₎ − P⁻¹·(p₍₁₎ + Σᵢ₌₂ⁿ⁻¹ p₍ᵢ₎·x₍ᵢ₎/x₍₁₎)`
///
/// over ordered records. Exact identity with [`indices::idrm`]; requires at
/// least two records and a strictly positive minimum.
pub fn idrm_via_palma_form(d: &WeightedDistribution) -> Result<f64> {
    if d.len() < 2 {
        return Err(Error::TooFewRecords { needed: 2, got: d.len() });
    }
    let o = d.ordered();
    let x_min = o.min_income();
    if x_min <= 0.0 {
        return Err(Error::ZeroMinimumIncome);
    }
    let m = o.total_weight();
    let n = o.len();
    let p_first = o.records()[0].weight / m;
    let p_last = o.records()[n - 1].weight / m;
    let mut middle = 0.0;
    for r in &o.records()[1..n - 1] {
        middle += (r.weight / m) * (r.income / x_min);
    }
    let p_inv = x_min / o.max_income();
    Ok(1.0 - p_last - p_inv * (p_first + middle))
}

/// The index bracketed by the max-to-min ratio alone.
///
/// Holding `P`, `p₍₁₎` and `p₍ₙ₎` fixed, the index is smallest when all
/// middle records sit at the maximum and largest when they sit at the
/// minimum:
///
/// * `idrm_low  = p₍₁₎·(1 − P⁻¹)`
/// * `idrm_high = (1 − p₍ₙ₎)·(1 − P⁻¹)`
///
/// `nop` locates the observed index inside the bracket, 0 at the lower edge,
/// 1 at the upper.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PalmaDecomposition {
    pub palma: f64,
    pub idrm_low: f64,
    pub idrm_high: f64,
    pub nop: f64,
    pub p_first: f64,
    pub p_last: f64,
}

/// Computes [`PalmaDecomposition`]. Requires two or more records, a positive
/// minimum income, and a non-degenerate bracket (the bracket collapses when
/// all incomes are equal, or when there are no middle records).
pub fn palma_bounds(d: &WeightedDistribution) -> Result<PalmaDecomposition> {
    if d.len() < 2 {
        return Err(Error::TooFewRecords { needed: 2, got: d.len() });
    }
    let o = d.ordered();
    let x_min = o.min_income();
    if x_min <= 0.0 {
        return Err(Error::ZeroMinimumIncome);
    }
    let m = o.total_weight();
    let n = o.len();
    let p_first = o.records()[0].weight / m;
    let p_last = o.records()[n - 1].weight / m;
    let palma = o.max_income() / x_min;
    let one_minus_p_inv = 1.0 - x_min / o.max_income();
    let denominator = (1.0 - p_first - p_last) * one_minus_p_inv;
    if denominator == 0.0 {
        return Err(Error::DegenerateEquality);
    }
    let idrm_low = p_first * one_minus_p_inv;
    let idrm_high = (1.0 - p_last) * one_minus_p_inv;
    let nop = (indices::idrm(d)? - idrm_low) / denominator;
    Ok(PalmaDecomposition { palma, idrm_low, idrm_high, nop, p_first, p_last })
}
