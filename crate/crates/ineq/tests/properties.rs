//! Property tests: every structural identity the library promises, checked
//! over randomized distributions with independent oracle implementations
//! where one exists.

use ineq::analytics;
use ineq::decomposition;
use ineq::distribution::{GroupedPopulation, Record};
use ineq::indices::{self, IndexKind};
use ineq::WeightedDistribution;
use proptest::prelude::*;

// (income, weight) pairs, incomes strictly positive.
fn positive_pairs(max_len: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((0.01f64..1e6, 0.5f64..10.0), 2..max_len)
}

// Incomes may be exactly zero with 1-in-5 probability.
fn nonnegative_pairs(max_len: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec(
        (prop_oneof![1 => Just(0.0f64), 4 => 0.01f64..1e6], 0.5f64..10.0),
        2..max_len,
    )
}

fn dist(pairs: &[(f64, f64)]) -> WeightedDistribution {
    WeightedDistribution::from_pairs(pairs.iter().copied()).expect("valid pairs")
}

// Independent oracle: the defining gap-sum form of the idrm.
fn idrm_gap_sum(d: &WeightedDistribution) -> f64 {
    let max = d.max_income();
    let m = d.total_weight();
    d.records().iter().map(|r| (r.weight / m) * (max - r.income) / max).sum()
}

// Independent oracle: Gini as the normalized mean absolute difference.
fn gini_pairwise(d: &WeightedDistribution) -> f64 {
    let m = d.total_weight();
    let mean = d.mean();
    let mut acc = 0.0;
    for a in d.records() {
        for b in d.records() {
            acc += a.weight * b.weight * (a.income - b.income).abs();
        }
    }
    acc / (2.0 * m * m * mean)
}

fn all_defined_kinds() -> Vec<IndexKind> {
    vec![
        IndexKind::Idrm,
        IndexKind::Gini,
        IndexKind::Theil,
        IndexKind::Mld,
        IndexKind::GeneralizedEntropy { alpha: 2.0 },
        IndexKind::Atkinson { epsilon: 2.0 },
        IndexKind::PalmaShareRatio { top_percent: 10.0, bottom_percent: 40.0 },
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn idrm_closed_form_matches_gap_sum(pairs in nonnegative_pairs(60)) {
        let d = dist(&pairs);
        prop_assume!(d.max_income() > 0.0);
        let closed = indices::idrm(&d).unwrap();
        prop_assert!((closed - idrm_gap_sum(&d)).abs() < 1e-12);
    }

    #[test]
    fn gini_matches_pairwise_differences(pairs in nonnegative_pairs(40)) {
        let d = dist(&pairs);
        prop_assume!(d.mean() > 0.0);
        let lorenz_based = indices::gini(&d).unwrap();
        prop_assert!((lorenz_based - gini_pairwise(&d)).abs() < 1e-10);
    }

    #[test]
    fn indices_are_scale_invariant(pairs in positive_pairs(40), factor in 1e-3f64..1e3) {
        let d = dist(&pairs);
        let scaled = WeightedDistribution::from_pairs(
            pairs.iter().map(|&(x, w)| (x * factor, w)),
        ).unwrap();
        let idrm_before = indices::idrm(&d).unwrap();
        let idrm_after = indices::idrm(&scaled).unwrap();
        prop_assert!((idrm_before - idrm_after).abs() < 1e-14);
        for kind in all_defined_kinds() {
            let before = kind.compute(&d).unwrap();
            let after = kind.compute(&scaled).unwrap();
            let scale = before.abs().max(1.0);
            prop_assert!(
                (before - after).abs() < 1e-12 * scale,
                "{} not scale invariant: {} vs {}", kind.describe(), before, after
            );
        }
    }

    #[test]
    fn indices_are_replication_invariant(pairs in positive_pairs(30), r in 2u32..=5) {
        let d = dist(&pairs);
        // Route 1: multiply every weight by r.
        let reweighted = WeightedDistribution::from_pairs(
            pairs.iter().map(|&(x, w)| (x, w * f64::from(r))),
        ).unwrap();
        // Route 2: concatenate r copies of the record list.
        let tiled = WeightedDistribution::from_pairs(
            std::iter::repeat_n(pairs.iter().copied(), r as usize).flatten(),
        ).unwrap();
        for kind in all_defined_kinds() {
            let base = kind.compute(&d).unwrap();
            let scale = base.abs().max(1.0);
            prop_assert!((kind.compute(&reweighted).unwrap() - base).abs() < 1e-12 * scale);
            prop_assert!((kind.compute(&tiled).unwrap() - base).abs() < 1e-12 * scale);
        }
    }

    #[test]
    fn indices_are_anonymous(pairs in positive_pairs(40)) {
        let d = dist(&pairs);
        let mut reversed = pairs.clone();
        reversed.reverse();
        let rd = dist(&reversed);
        for kind in all_defined_kinds() {
            let a = kind.compute(&d).unwrap();
            let b = kind.compute(&rd).unwrap();
            prop_assert!((a - b).abs() < 1e-12 * a.abs().max(1.0));
        }
    }

    #[test]
    fn welfare_complements_idrm(pairs in nonnegative_pairs(40)) {
        let d = dist(&pairs);
        prop_assume!(d.max_income() > 0.0);
        let u = analytics::welfare(&d).unwrap();
        prop_assert!((u + indices::idrm(&d).unwrap() - 1.0).abs() < 1e-12);
        if d.mean() > 0.0 {
            let tau = analytics::tolerance_tau(&d).unwrap();
            prop_assert!((u * (1.0 + tau) - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn palma_form_route_reproduces_idrm(pairs in positive_pairs(50)) {
        let d = dist(&pairs);
        let direct = indices::idrm(&d).unwrap();
        let rewritten = analytics::idrm_via_palma_form(&d).unwrap();
        prop_assert!((direct - rewritten).abs() < 1e-12);
    }

    #[test]
    fn palma_bounds_bracket_the_idrm(mut pairs in positive_pairs(50)) {
        prop_assume!(pairs.len() >= 3);
        // Ensure a genuine spread so the bracket denominator is nonzero.
        pairs[0].0 = 0.01;
        pairs[1].0 = 1e5;
        let d = dist(&pairs);
        let direct = indices::idrm(&d).unwrap();
        let b = analytics::palma_bounds(&d).unwrap();
        prop_assert!(b.idrm_low <= direct + 1e-12);
        prop_assert!(direct <= b.idrm_high + 1e-12);
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&b.nop));
        // The bounds themselves only need the extreme shares and the ratio.
        let p = b.palma;
        prop_assert!((b.idrm_low - b.p_first * (1.0 - 1.0 / p)).abs() < 1e-12);
        prop_assert!((b.idrm_high - (1.0 - b.p_last) * (1.0 - 1.0 / p)).abs() < 1e-12);
    }

    #[test]
    fn decomposition_identity_holds_on_random_partitions(
        pairs in positive_pairs(50),
        labels in prop::collection::vec(0u8..4, 50),
    ) {
        let labeled: Vec<(String, Record)> = pairs
            .iter()
            .zip(&labels)
            .map(|(&(x, w), &l)| (format!("g{l}"), Record::new(x, w)))
            .collect();
        let gp = GroupedPopulation::from_labeled_records(labeled).unwrap();
        let report = decomposition::decompose(&gp).unwrap();
        prop_assert!(report.residual.abs() < 1e-12);
        prop_assert!((report.within + report.between - report.total).abs() < 1e-12);
        prop_assert!(report.within >= -1e-15 && report.between >= -1e-15);
    }

    #[test]
    fn single_group_has_no_between_and_singletons_have_no_within(
        pairs in positive_pairs(20),
    ) {
        let one = GroupedPopulation::from_labeled_records(
            pairs.iter().map(|&(x, w)| ("all".to_string(), Record::new(x, w))),
        ).unwrap();
        let r = decomposition::decompose(&one).unwrap();
        prop_assert!(r.between.abs() < 1e-15);

        let singletons = GroupedPopulation::from_labeled_records(
            pairs.iter().enumerate().map(|(i, &(x, w))| (format!("u{i}"), Record::new(x, w))),
        ).unwrap();
        let r = decomposition::decompose(&singletons).unwrap();
        prop_assert!(r.within.abs() < 1e-15);
    }

    #[test]
    fn transfers_below_the_maximum_leave_idrm_unchanged(
        pairs in positive_pairs(40),
        pick in prop::collection::vec(0usize..1000, 2),
    ) {
        let d = dist(&pairs);
        let max = d.max_income();
        let below: Vec<usize> =
            (0..d.len()).filter(|&i| d.records()[i].income < max).collect();
        prop_assume!(below.len() >= 2);
        let a = below[pick[0] % below.len()];
        let b = below[pick[1] % below.len()];
        let (xa, xb) = (d.records()[a].income, d.records()[b].income);
        prop_assume!(xa != xb);
        let (from, to) = if xa > xb { (a, b) } else { (b, a) };
        let gap = (xa - xb).abs();
        let mut records = d.records().to_vec();
        let eps = 1e-3 * gap;
        records[from].income -= eps;
        records[to].income += (records[from].weight / records[to].weight) * eps;
        let after = WeightedDistribution::from_records(records).unwrap();
        prop_assume!(after.max_income() == max);
        let diff = indices::idrm(&after).unwrap() - indices::idrm(&d).unwrap();
        prop_assert!(diff.abs() < 1e-12, "interior transfer moved idrm by {diff}");
    }

    #[test]
    fn transfers_from_a_unique_maximum_strictly_lower_idrm(pairs in positive_pairs(40)) {
        let d = dist(&pairs);
        let max = d.max_income();
        let at_max: Vec<usize> =
            (0..d.len()).filter(|&i| d.records()[i].income == max).collect();
        prop_assume!(at_max.len() == 1);
        let from = at_max[0];
        let to = (0..d.len()).find(|&i| i != from).unwrap();
        let gap = max - d.records()[to].income;
        prop_assume!(gap > 1e-6 * max);
        let mut records = d.records().to_vec();
        let eps = 1e-3 * gap;
        records[from].income -= eps;
        records[to].income += (records[from].weight / records[to].weight) * eps;
        let after = WeightedDistribution::from_records(records).unwrap();
        prop_assume!(after.max_income() < max);
        prop_assert!(indices::idrm(&after).unwrap() < indices::idrm(&d).unwrap());
    }

    #[test]
    fn quantile_grouping_preserves_mass_and_flattens_the_summit(
        pairs in positive_pairs(60),
        g in 1usize..=30,
    ) {
        let d = dist(&pairs);
        let grouped = d.quantile_group(g).unwrap();
        prop_assert_eq!(grouped.len(), g);
        prop_assert!((grouped.total_weight() - d.total_weight()).abs() < 1e-9 * d.total_weight());
        prop_assert!((grouped.total_income() - d.total_income()).abs() < 1e-9 * d.total_income().max(1.0));
        prop_assert!(grouped.max_income() <= d.max_income() + 1e-9 * d.max_income());
        // Group incomes come out ordered: each group is a slice of the
        // ordered distribution.
        for w in grouped.records().windows(2) {
            prop_assert!(w[0].income <= w[1].income + 1e-9 * d.max_income());
        }
    }

    #[test]
    fn quantile_grouping_at_n_is_the_identity(incomes in prop::collection::vec(0.01f64..1e6, 2..40)) {
        let d = WeightedDistribution::unweighted(&incomes).unwrap();
        let grouped = d.quantile_group(d.len()).unwrap();
        let mut sorted = incomes.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (g, x) in grouped.records().iter().zip(&sorted) {
            prop_assert!((g.income - x).abs() <= 1e-9 * x);
        }
    }

    #[test]
    fn lorenz_curves_are_monotone_convex_and_end_at_one(pairs in positive_pairs(50)) {
        let d = dist(&pairs);
        let curve = analytics::lorenz(&d).unwrap();
        let last = curve.points.last().unwrap();
        prop_assert!((last.population - 1.0).abs() < 1e-12);
        prop_assert!((last.income - 1.0).abs() < 1e-12);
        let mut prev = analytics::LorenzPoint { population: 0.0, income: 0.0 };
        let mut prev_slope = 0.0;
        for p in &curve.points {
            prop_assert!(p.population >= prev.population - 1e-15);
            prop_assert!(p.income >= prev.income - 1e-15);
            prop_assert!(p.income <= p.population + 1e-12);
            let slope = (p.income - prev.income) / (p.population - prev.population).max(1e-300);
            prop_assert!(slope >= prev_slope - 1e-9, "lorenz slopes must not decrease");
            prev_slope = slope;
            prev = *p;
        }
        let scaled = curve.scaled_points();
        prop_assert!((scaled.last().unwrap().income - curve.delta).abs() < 1e-12);
        prop_assert!((curve.delta + indices::idrm(&d).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn entropy_family_specializes_to_theil_and_mld(pairs in positive_pairs(40)) {
        let d = dist(&pairs);
        let theil = indices::theil(&d).unwrap();
        let mld = indices::mld(&d).unwrap();
        prop_assert_eq!(theil, indices::generalized_entropy(&d, 1.0).unwrap());
        prop_assert_eq!(mld, indices::generalized_entropy(&d, 0.0).unwrap());
        // Small alpha approaches the limit case from both sides.
        let near = indices::generalized_entropy(&d, 1e-7).unwrap();
        prop_assert!((near - mld).abs() < 1e-4 * mld.abs().max(1.0));
    }

    #[test]
    fn atkinson_with_aversion_at_least_one_saturates_on_zero_incomes(
        pairs in positive_pairs(20),
        epsilon in 1.0f64..4.0,
    ) {
        let mut with_zero = pairs.clone();
        with_zero.push((0.0, 1.0));
        let d = dist(&with_zero);
        prop_assert_eq!(indices::atkinson(&d, epsilon).unwrap(), 1.0);
    }

    #[test]
    fn indices_sit_in_their_documented_ranges(pairs in positive_pairs(40)) {
        let d = dist(&pairs);
        for kind in [IndexKind::Idrm, IndexKind::Gini, IndexKind::Atkinson { epsilon: 2.0 }] {
            let v = kind.compute(&d).unwrap();
            prop_assert!((0.0..=1.0).contains(&v), "{} = {v} out of [0,1]", kind.describe());
        }
        prop_assert!(indices::theil(&d).unwrap() >= -1e-15);
        prop_assert!(indices::mld(&d).unwrap() >= -1e-15);
    }
}
