//! Scalar inequality indices.
//!
//! All functions take a validated [`WeightedDistribution`] and return a
//! dimensionless index. `pᵢ = wᵢ/m` denotes population shares throughout.
//!
//! * [`idrm`] — mean relative distance to the maximum, `Σ pᵢ·(x_max − xᵢ)/x_max
//!   = 1 − x̄/x_max`. Bounded in `[0, 1)`, zero on constant distributions.
//! * [`gini`] — computed from the Lorenz curve by exact trapezoids,
//!   `1 − Σ p₍ⱼ₎·(Lⱼ + Lⱼ₋₁)`; identical (to rounding) to the pairwise
//!   mean-difference form `Σᵢ Σⱼ pᵢpⱼ|xᵢ − xⱼ| / 2x̄`.
//! * [`generalized_entropy`] — GE(α) family with [`theil`] (α = 1) and
//!   [`mld`] (α = 0) as the named members.
//! * [`atkinson`] — `1 − x_EDE/x̄` where `x_EDE` is the power mean of order
//!   `1 − ε` (geometric mean at ε = 1).
//! * [`palma_decile_ratio`] / [`palma_share_ratio`] — top/bottom tail ratios.
//!   The decile form divides decile means; the share form divides income
//!   shares at arbitrary percent cuts. The two answer different questions and
//!   are named apart deliberately.

use serde::Serialize;

use crate::distribution::WeightedDistribution;
use crate::error::{Error, Result};

/// Relative-to-maximum index: the population-weighted mean of the per-unit
/// gaps to the richest unit, as a share of that maximum. Equals `1 − x̄/x_max`.
///
/// Undefined when the maximum income is zero.
pub fn idrm(d: &WeightedDistribution) -> Result<f64> {
    if d.max_income() <= 0.0 {
        return Err(Error::UndefinedForZeroMax);
    }
    Ok(1.0 - d.mean() / d.max_income())
}

/// Gini coefficient via exact Lorenz trapezoids on the ordered distribution.
pub fn gini(d: &WeightedDistribution) -> Result<f64> {
    if d.mean() <= 0.0 {
        return Err(Error::UndefinedForZeroMean);
    }
    let o = d.ordered();
    let m = o.total_weight();
    let t = o.total_income();
    let mut acc = 0.0;
    let mut prev = 0.0;
    for (i, r) in o.records().iter().enumerate() {
        let l = o.cum_income()[i] / t;
        acc += (r.weight / m) * (l + prev);
        prev = l;
    }
    Ok(1.0 - acc)
}

/// Generalized entropy GE(α).
///
/// * α = 1: Theil, `Σ pᵢ·(xᵢ/x̄)·ln(xᵢ/x̄)` with the `0·ln 0 ≡ 0` convention.
/// * α = 0: mean log deviation, `Σ pᵢ·ln(x̄/xᵢ)`; zero incomes are rejected.
/// * otherwise: `(1/(α(α−1)))·Σ pᵢ·[(xᵢ/x̄)^α − 1]`; zero incomes are rejected
///   for α < 0, where the power diverges.
pub fn generalized_entropy(d: &WeightedDistribution, alpha: f64) -> Result<f64> {
    if !alpha.is_finite() {
        return Err(Error::NonFiniteValue { index: 0, what: "alpha" });
    }
    let mean = d.mean();
    if mean <= 0.0 {
        return Err(Error::UndefinedForZeroMean);
    }
    let m = d.total_weight();
    if alpha == 1.0 {
        let mut acc = 0.0;
        for r in d.records() {
            if r.income > 0.0 {
                let ratio = r.income / mean;
                acc += (r.weight / m) * ratio * ratio.ln();
            }
        }
        return Ok(acc);
    }
    if alpha <= 0.0 && d.records().iter().any(|r| r.income == 0.0) {
        return Err(Error::ZeroIncomeWithNonpositiveAlpha { alpha });
    }
    if alpha == 0.0 {
        let mut acc = 0.0;
        for r in d.records() {
            acc += (r.weight / m) * (mean / r.income).ln();
        }
        return Ok(acc);
    }
    let mut acc = 0.0;
    for r in d.records() {
        acc += (r.weight / m) * ((r.income / mean).powf(alpha) - 1.0);
    }
    Ok(acc / (alpha * (alpha - 1.0)))
}

/// Theil index, GE(1).
pub fn theil(d: &WeightedDistribution) -> Result<f64> {
    generalized_entropy(d, 1.0)
}

/// Mean log deviation, GE(0).
pub fn mld(d: &WeightedDistribution) -> Result<f64> {
    generalized_entropy(d, 0.0)
}

/// Equally-distributed-equivalent income for aversion ε: the power mean of
/// order `1 − ε` (geometric mean at ε = 1). Zero at ε ≥ 1 when any income is
/// zero.
pub(crate) fn equally_distributed_equivalent(
    d: &WeightedDistribution,
    epsilon: f64,
) -> Result<f64> {
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(Error::NonPositiveEpsilon { epsilon });
    }
    let m = d.total_weight();
    if epsilon >= 1.0 && d.records().iter().any(|r| r.income == 0.0) {
        return Ok(0.0);
    }
    if epsilon == 1.0 {
        let mut acc = 0.0;
        for r in d.records() {
            acc += (r.weight / m) * r.income.ln();
        }
        return Ok(acc.exp());
    }
    let p = 1.0 - epsilon;
    let mut acc = 0.0;
    for r in d.records() {
        acc += (r.weight / m) * r.income.powf(p);
    }
    Ok(acc.powf(1.0 / p))
}

/// Atkinson index `1 − x_EDE/x̄` for inequality aversion ε > 0. Exactly 1
/// when ε ≥ 1 and any income is zero.
pub fn atkinson(d: &WeightedDistribution, epsilon: f64) -> Result<f64> {
    if d.mean() <= 0.0 {
        return Err(Error::UndefinedForZeroMean);
    }
    let ede = equally_distributed_equivalent(d, epsilon)?;
    Ok(1.0 - ede / d.mean())
}

/// Ratio of the top decile mean to the bottom decile mean, after collapsing
/// the distribution into ten equal-weight quantile groups.
pub fn palma_decile_ratio(d: &WeightedDistribution) -> Result<f64> {
    let deciles = d.quantile_group(10)?;
    let bottom = deciles.records()[0].income;
    let top = deciles.records()[9].income;
    if bottom <= 0.0 {
        return Err(Error::ZeroBottomDecile);
    }
    Ok(top / bottom)
}

/// Ratio of the income share held by the richest `top_percent` of the
/// population to the share held by the poorest `bottom_percent`. Slices are
/// cut in population weight with fractional record splitting.
pub fn palma_share_ratio(
    d: &WeightedDistribution,
    top_percent: f64,
    bottom_percent: f64,
) -> Result<f64> {
    if !top_percent.is_finite()
        || !bottom_percent.is_finite()
        || top_percent <= 0.0
        || bottom_percent <= 0.0
        || top_percent + bottom_percent > 100.0
    {
        return Err(Error::InvalidPercents { top: top_percent, bottom: bottom_percent });
    }
    if d.total_income() <= 0.0 {
        return Err(Error::UndefinedForZeroTotal);
    }
    let o = d.ordered();
    let m = o.total_weight();
    let t = o.total_income();
    let bottom_mass = o.prefix_income(m * bottom_percent / 100.0);
    let top_mass = t - o.prefix_income(m * (1.0 - top_percent / 100.0));
    if bottom_mass <= 0.0 {
        return Err(Error::ZeroBottomShare);
    }
    Ok(top_mass / bottom_mass)
}

/// Default inequality aversion for the Atkinson index.
pub const DEFAULT_EPSILON: f64 = 2.0;
/// Default generalized entropy order (Theil).
pub const DEFAULT_ALPHA: f64 = 1.0;
/// Default percent cuts for the share-based Palma ratio.
pub const DEFAULT_TOP_PERCENT: f64 = 10.0;
pub const DEFAULT_BOTTOM_PERCENT: f64 = 40.0;

/// An index selection with its parameters, the unit of dispatch for reports,
/// bootstrap and axiom checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "index", rename_all = "snake_case")]
pub enum IndexKind {
    Idrm,
    Gini,
    Theil,
    Mld,
    #[serde(rename = "ge")]
    GeneralizedEntropy { alpha: f64 },
    Atkinson { epsilon: f64 },
    #[serde(rename = "palma_decile")]
    PalmaDecileRatio,
    #[serde(rename = "palma_share")]
    PalmaShareRatio { top_percent: f64, bottom_percent: f64 },
}

/// Parameter bundle used when resolving index names.
#[derive(Debug, Clone, Copy)]
pub struct IndexParams {
    pub alpha: f64,
    pub epsilon: f64,
    pub top_percent: f64,
    pub bottom_percent: f64,
}

impl Default for IndexParams {
    fn default() -> Self {
        IndexParams {
            alpha: DEFAULT_ALPHA,
            epsilon: DEFAULT_EPSILON,
            top_percent: DEFAULT_TOP_PERCENT,
            bottom_percent: DEFAULT_BOTTOM_PERCENT,
        }
    }
}

impl IndexKind {
    pub fn compute(&self, d: &WeightedDistribution) -> Result<f64> {
        match *self {
            IndexKind::Idrm => idrm(d),
            IndexKind::Gini => gini(d),
            IndexKind::Theil => theil(d),
            IndexKind::Mld => mld(d),
            IndexKind::GeneralizedEntropy { alpha } => generalized_entropy(d, alpha),
            IndexKind::Atkinson { epsilon } => atkinson(d, epsilon),
            IndexKind::PalmaDecileRatio => palma_decile_ratio(d),
            IndexKind::PalmaShareRatio { top_percent, bottom_percent } => {
                palma_share_ratio(d, top_percent, bottom_percent)
            }
        }
    }

    /// Short stable identifier, used in reports and on the command line.
    pub fn id(&self) -> &'static str {
        match self {
            IndexKind::Idrm => "idrm",
            IndexKind::Gini => "gini",
            IndexKind::Theil => "theil",
            IndexKind::Mld => "mld",
            IndexKind::GeneralizedEntropy { .. } => "ge",
            IndexKind::Atkinson { .. } => "atkinson",
            IndexKind::PalmaDecileRatio => "palma_decile",
            IndexKind::PalmaShareRatio { .. } => "palma_share",
        }
    }

    /// Identifier with parameters spelled out.
    pub fn describe(&self) -> String {
        match *self {
            IndexKind::GeneralizedEntropy { alpha } => format!("ge(alpha={alpha})"),
            IndexKind::Atkinson { epsilon } => format!("atkinson(epsilon={epsilon})"),
            IndexKind::PalmaShareRatio { top_percent, bottom_percent } => {
                format!("palma_share(top={top_percent}%,bottom={bottom_percent}%)")
            }
            _ => self.id().to_string(),
        }
    }

    /// Resolves an identifier, drawing parameters from `params`.
    pub fn from_id(id: &str, params: &IndexParams) -> Result<Self> {
        match id.trim().to_ascii_lowercase().as_str() {
            "idrm" => Ok(IndexKind::Idrm),
            "gini" => Ok(IndexKind::Gini),
            "theil" => Ok(IndexKind::Theil),
            "mld" => Ok(IndexKind::Mld),
            "ge" => Ok(IndexKind::GeneralizedEntropy { alpha: params.alpha }),
            "atkinson" => Ok(IndexKind::Atkinson { epsilon: params.epsilon }),
            "palma_decile" => Ok(IndexKind::PalmaDecileRatio),
            "palma_share" => Ok(IndexKind::PalmaShareRatio {
                top_percent: params.top_percent,
                bottom_percent: params.bottom_percent,
            }),
            other => Err(Error::UnknownIndex(other.to_string())),
        }
    }

    /// Parses a comma-separated identifier list.
    pub fn parse_list(list: &str, params: &IndexParams) -> Result<Vec<Self>> {
        let kinds: Vec<IndexKind> = list
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| IndexKind::from_id(s, params))
            .collect::<Result<_>>()?;
        if kinds.is_empty() {
            return Err(Error::UnknownIndex(list.to_string()));
        }
        Ok(kinds)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent pairwise form of the Gini coefficient, the oracle for the
    // trapezoid implementation.
    fn gini_pairwise(d: &WeightedDistribution) -> f64 {
        let m = d.total_weight();
        let mut acc = 0.0;
        for a in d.records() {
            for b in d.records() {
                acc += (a.weight / m) * (b.weight / m) * (a.income - b.income).abs();
            }
        }
        acc / (2.0 * d.mean())
    }

    // Definitional gap-sum form of the relative-to-maximum index.
    fn idrm_gap_sum(d: &WeightedDistribution) -> f64 {
        let m = d.total_weight();
        let max = d.max_income();
        d.records()
            .iter()
            .map(|r| (r.weight / m) * (max - r.income) / max)
            .sum()
    }

    fn five() -> WeightedDistribution {
        WeightedDistribution::unweighted(&[0.0, 10.0, 25.0, 50.0, 80.0]).unwrap()
    }

    #[test]
    fn idrm_of_five_person_example() {
        let d = five();
        let v = idrm(&d).unwrap();
        // mean 33, max 80: 1 - 33/80 = 0.5875
        assert!((v - 0.5875).abs() < 1e-12);
        assert!((v - idrm_gap_sum(&d)).abs() < 1e-12);
    }

    #[test]
    fn idrm_matches_weight_share_form_on_one_nonzero_record() {
        // One record at k with weight w*, the rest zero: 1 - w*/m exactly.
        let d = WeightedDistribution::from_pairs([(0.0, 3.0), (7.0, 2.0), (0.0, 5.0)]).unwrap();
        assert_eq!(idrm(&d).unwrap(), 1.0 - 2.0 / 10.0);
    }

    #[test]
    fn idrm_rejects_zero_max() {
        let d = WeightedDistribution::unweighted(&[0.0, 0.0]).unwrap();
        assert!(matches!(idrm(&d), Err(Error::UndefinedForZeroMax)));
    }

    #[test]
    fn gini_of_five_person_example_matches_both_routes() {
        let d = five();
        let v = gini(&d).unwrap();
        assert!((v - 32.0 / 66.0).abs() < 1e-12); // 0.48484…
        assert!((v - gini_pairwise(&d)).abs() < 1e-12);
    }

    #[test]
    fn gini_handles_weighted_ties() {
        let d = WeightedDistribution::from_pairs([(10.0, 2.0), (10.0, 3.0), (40.0, 1.0)]).unwrap();
        let v = gini(&d).unwrap();
        assert!((v - gini_pairwise(&d)).abs() < 1e-12);
    }

    #[test]
    fn theil_uses_zero_times_log_zero_convention() {
        let d = WeightedDistribution::unweighted(&[0.0, 2.0]).unwrap();
        // Only the nonzero record contributes: 0.5 * 2 * ln 2.
        assert!((theil(&d).unwrap() - 2.0_f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn mld_of_two_points() {
        let d = WeightedDistribution::unweighted(&[1.0, 3.0]).unwrap();
        // ln 2 - (ln 1 + ln 3)/2 = 0.143841…
        let want = 2.0_f64.ln() - 3.0_f64.ln() / 2.0;
        assert!((mld(&d).unwrap() - want).abs() < 1e-12);
        assert!((want - 0.143841).abs() < 5e-7);
    }

    #[test]
    fn mld_rejects_zero_incomes() {
        let d = WeightedDistribution::unweighted(&[0.0, 2.0]).unwrap();
        assert!(matches!(mld(&d), Err(Error::ZeroIncomeWithNonpositiveAlpha { .. })));
        assert!(matches!(
            generalized_entropy(&d, -1.0),
            Err(Error::ZeroIncomeWithNonpositiveAlpha { .. })
        ));
    }

    #[test]
    fn ge_named_members_agree_with_general_form() {
        let d = WeightedDistribution::from_pairs([(1.0, 2.0), (3.0, 1.0), (9.0, 1.0)]).unwrap();
        assert_eq!(theil(&d).unwrap(), generalized_entropy(&d, 1.0).unwrap());
        assert_eq!(mld(&d).unwrap(), generalized_entropy(&d, 0.0).unwrap());
        // GE(2) equals half the squared coefficient of variation.
        let m = d.total_weight();
        let xb = d.mean();
        let var: f64 =
            d.records().iter().map(|r| (r.weight / m) * (r.income - xb).powi(2)).sum();
        let want = var / (2.0 * xb * xb);
        assert!((generalized_entropy(&d, 2.0).unwrap() - want).abs() < 1e-12);
    }

    #[test]
    fn atkinson_epsilon_one_uses_geometric_mean() {
        let d = WeightedDistribution::unweighted(&[1.0, 4.0]).unwrap();
        let want = 1.0 - 2.0 / 2.5; // geometric mean 2, mean 2.5
        assert!((atkinson(&d, 1.0).unwrap() - want).abs() < 1e-12);
    }

    #[test]
    fn atkinson_is_exactly_one_with_zero_income_and_high_aversion() {
        let d = WeightedDistribution::unweighted(&[0.0, 5.0, 9.0]).unwrap();
        assert_eq!(atkinson(&d, 1.0).unwrap(), 1.0);
        assert_eq!(atkinson(&d, 2.0).unwrap(), 1.0);
        // Below ε = 1 zero incomes are fine: x_EDE stays positive.
        assert!(atkinson(&d, 0.5).unwrap() < 1.0);
    }

    #[test]
    fn atkinson_rejects_non_positive_epsilon() {
        let d = WeightedDistribution::unweighted(&[1.0, 2.0]).unwrap();
        assert!(matches!(atkinson(&d, 0.0), Err(Error::NonPositiveEpsilon { .. })));
        assert!(matches!(atkinson(&d, -1.0), Err(Error::NonPositiveEpsilon { .. })));
    }

    #[test]
    fn palma_decile_ratio_of_1_to_100() {
        let incomes: Vec<f64> = (1..=100).map(f64::from).collect();
        let d = WeightedDistribution::unweighted(&incomes).unwrap();
        // Decile means 5.5 and 95.5.
        assert!((palma_decile_ratio(&d).unwrap() - 95.5 / 5.5).abs() < 1e-9);
    }

    #[test]
    fn palma_share_ratio_examples() {
        let incomes: Vec<f64> = (1..=10).map(f64::from).collect();
        let d = WeightedDistribution::unweighted(&incomes).unwrap();
        // Top 10% holds 10, bottom 40% holds 1+2+3+4 = 10.
        assert!((palma_share_ratio(&d, 10.0, 40.0).unwrap() - 1.0).abs() < 1e-12);

        let c = WeightedDistribution::unweighted(&[7.0; 10]).unwrap();
        assert!((palma_share_ratio(&c, 10.0, 40.0).unwrap() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn palma_share_ratio_rejects_bad_percents() {
        let d = WeightedDistribution::unweighted(&[1.0, 2.0]).unwrap();
        assert!(matches!(
            palma_share_ratio(&d, 0.0, 40.0),
            Err(Error::InvalidPercents { .. })
        ));
        assert!(matches!(
            palma_share_ratio(&d, 70.0, 40.0),
            Err(Error::InvalidPercents { .. })
        ));
    }

    #[test]
    fn palma_share_ratio_rejects_zero_bottom() {
        let d = WeightedDistribution::unweighted(&[0.0, 0.0, 0.0, 0.0, 10.0]).unwrap();
        assert!(matches!(
            palma_share_ratio(&d, 10.0, 40.0),
            Err(Error::ZeroBottomShare)
        ));
    }

    #[test]
    fn index_ids_resolve_and_round_trip() {
        let params = IndexParams::default();
        for id in ["idrm", "gini", "theil", "mld", "ge", "atkinson", "palma_decile", "palma_share"]
        {
            let kind = IndexKind::from_id(id, &params).unwrap();
            assert_eq!(kind.id(), id);
        }
        assert!(matches!(
            IndexKind::from_id("median", &params),
            Err(Error::UnknownIndex(_))
        ));
        let list = IndexKind::parse_list("idrm, gini", &params).unwrap();
        assert_eq!(list.len(), 2);
    }

    #[test]
    fn constant_distributions_score_zero() {
        let d = WeightedDistribution::from_pairs([(4.0, 2.0), (4.0, 5.0)]).unwrap();
        assert!(idrm(&d).unwrap().abs() < 1e-12);
        assert!(gini(&d).unwrap().abs() < 1e-12);
        assert!(theil(&d).unwrap().abs() < 1e-12);
        assert!(mld(&d).unwrap().abs() < 1e-12);
        assert!(atkinson(&d, 2.0).unwrap().abs() < 1e-12);
    }
}
