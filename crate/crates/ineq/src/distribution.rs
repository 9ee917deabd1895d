//! Weighted income distributions.
//!
//! A distribution is a finite list of records `(income, weight)`. Incomes are
//! non-negative reals; weights are strictly positive reals (survey expansion
//! factors, replication counts, or plain frequencies). Aggregates — population
//! size `m`, total income `T`, mean and maximum — are fixed at construction,
//! so every consumer sees the same numbers.
//!
//! [`OrderedDistribution`] is the ascending view with cumulative weight and
//! income, the basis for Lorenz curves, rank statistics and quantile slicing.
//! [`GroupedPopulation`] and [`Hierarchy`] carry labeled partitions for
//! within/between decompositions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One population unit: `weight` elements each holding `income`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub income: f64,
    pub weight: f64,
}

impl Record {
    pub fn new(income: f64, weight: f64) -> Self {
        Record { income, weight }
    }
}

/// A validated weighted income distribution.
#[derive(Debug, Clone)]
pub struct WeightedDistribution {
    records: Vec<Record>,
    total_weight: f64,
    total_income: f64,
    max_income: f64,
}

impl WeightedDistribution {
    /// Validates and builds a distribution. Rejects empty input, negative or
    /// non-finite incomes, and non-positive weights. All-zero incomes are
    /// accepted here; indices that divide by the maximum or the mean reject
    /// them at call time.
    pub fn from_records(records: Vec<Record>) -> Result<Self> {
        if records.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut total_weight = 0.0;
        let mut total_income = 0.0;
        let mut max_income = f64::NEG_INFINITY;
        for (index, r) in records.iter().enumerate() {
            if !r.income.is_finite() {
                return Err(Error::NonFiniteValue { index, what: "income" });
            }
            if !r.weight.is_finite() {
                return Err(Error::NonFiniteValue { index, what: "weight" });
            }
            if r.income < 0.0 {
                return Err(Error::NegativeIncome { index, value: r.income });
            }
            if r.weight <= 0.0 {
                return Err(Error::NonPositiveWeight { index, value: r.weight });
            }
            total_weight += r.weight;
            total_income += r.weight * r.income;
            max_income = max_income.max(r.income);
        }
        Ok(WeightedDistribution { records, total_weight, total_income, max_income })
    }

    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, f64)>,
    {
        Self::from_records(pairs.into_iter().map(|(x, w)| Record::new(x, w)).collect())
    }

    /// Every record gets weight 1.
    pub fn unweighted(incomes: &[f64]) -> Result<Self> {
        Self::from_records(incomes.iter().map(|&x| Record::new(x, 1.0)).collect())
    }

    pub fn records(&self) -> &[Record] {
        &self.records
    }

    /// Number of records (units), not the population size.
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction rejects empty input
    }

    /// Population size `m`: the sum of weights.
    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    /// Total income `T = Σ wᵢ·xᵢ`.
    pub fn total_income(&self) -> f64 {
        self.total_income
    }

    pub fn mean(&self) -> f64 {
        self.total_income / self.total_weight
    }

    pub fn max_income(&self) -> f64 {
        self.max_income
    }

    /// Population share of record `i`.
    pub fn proportion(&self, i: usize) -> f64 {
        self.records[i].weight / self.total_weight
    }

    pub fn is_constant(&self) -> bool {
        self.records.iter().all(|r| r.income == self.records[0].income)
    }

    /// Ascending view with cumulative weight and income. Ties keep input
    /// order, so the view is deterministic for a given record list.
    pub fn ordered(&self) -> OrderedDistribution {
        let mut order: Vec<usize> = (0..self.records.len()).collect();
        order.sort_by(|&a, &b| {
            self.records[a]
                .income
                .partial_cmp(&self.records[b].income)
                .expect("incomes are finite")
                .then(a.cmp(&b))
        });
        let records: Vec<Record> = order.iter().map(|&i| self.records[i]).collect();
        let mut cum_weight = Vec::with_capacity(records.len());
        let mut cum_income = Vec::with_capacity(records.len());
        let mut w = 0.0;
        let mut t = 0.0;
        for r in &records {
            w += r.weight;
            t += r.weight * r.income;
            cum_weight.push(w);
            cum_income.push(t);
        }
        OrderedDistribution { records, cum_weight, cum_income }
    }

    /// Collapses the distribution into `groups` quantile groups of equal
    /// population weight `m/groups`. Records straddling a cut are split
    /// fractionally, so group boundaries are exact in weight. Each output
    /// record carries the weighted mean income of its slice; total income is
    /// preserved up to rounding.
    ///
    /// With `groups` equal to the record count on equal-weight data the
    /// result is the sorted input itself.
    pub fn quantile_group(&self, groups: usize) -> Result<WeightedDistribution> {
        if groups == 0 {
            return Err(Error::InvalidGroupCount);
        }
        let o = self.ordered();
        let m = self.total_weight;
        let g = groups as f64;
        let share = m / g;
        let mut out = Vec::with_capacity(groups);
        let mut lo = 0.0;
        let mut lo_mass = 0.0;
        for k in 1..=groups {
            // Cuts are computed independently per k so they never drift.
            let hi = if k == groups { m } else { k as f64 * m / g };
            let hi_mass = o.prefix_income(hi);
            let width = hi - lo;
            let income = if width > 0.0 { (hi_mass - lo_mass) / width } else { o.records.last().unwrap().income };
            out.push(Record::new(income.max(0.0), share));
            lo = hi;
            lo_mass = hi_mass;
        }
        WeightedDistribution::from_records(out)
    }
}

/// Ascending-income view of a distribution with cumulative sums.
#[derive(Debug, Clone)]
pub struct OrderedDistribution {
    records: Vec<Record>,
    cum_weight: Vec<f64>,
    cum_income: Vec<f64>,
}

impl OrderedDistribution {
    pub fn records(&self) -> &[Record] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn total_weight(&self) -> f64 {
        *self.cum_weight.last().unwrap()
    }

    pub fn total_income(&self) -> f64 {
        *self.cum_income.last().unwrap()
    }

    pub fn min_income(&self) -> f64 {
        self.records[0].income
    }

    pub fn max_income(&self) -> f64 {
        self.records[self.records.len() - 1].income
    }

    /// Cumulative weight after each record.
    pub fn cum_weight(&self) -> &[f64] {
        &self.cum_weight
    }

    /// Cumulative income after each record.
    pub fn cum_income(&self) -> &[f64] {
        &self.cum_income
    }

    /// Income mass held by the poorest `w` units of population weight.
    /// Records straddling `w` contribute fractionally. Monotone in `w`.
    pub fn prefix_income(&self, w: f64) -> f64 {
        if w <= 0.0 {
            return 0.0;
        }
        if w >= self.total_weight() {
            return self.total_income();
        }
        // First record whose cumulative weight exceeds w holds the cut.
        let j = self.cum_weight.partition_point(|&cw| cw <= w);
        if j >= self.records.len() {
            return self.total_income();
        }
        let prev_w = if j == 0 { 0.0 } else { self.cum_weight[j - 1] };
        let prev_t = if j == 0 { 0.0 } else { self.cum_income[j - 1] };
        prev_t + (w - prev_w) * self.records[j].income
    }
}

/// A population partitioned into labeled groups.
#[derive(Debug, Clone)]
pub struct GroupedPopulation {
    groups: Vec<(String, WeightedDistribution)>,
}

impl GroupedPopulation {
    /// Builds from explicit groups. Labels must be unique; order is kept.
    pub fn new(groups: Vec<(String, WeightedDistribution)>) -> Result<Self> {
        if groups.is_empty() {
            return Err(Error::EmptyInput);
        }
        for (i, (label, _)) in groups.iter().enumerate() {
            if groups[..i].iter().any(|(l, _)| l == label) {
                return Err(Error::DuplicateGroupLabel { label: label.clone() });
            }
        }
        Ok(GroupedPopulation { groups })
    }

    /// Groups records by label, keeping first-appearance order.
    pub fn from_labeled_records<I>(records: I) -> Result<Self>
    where
        I: IntoIterator<Item = (String, Record)>,
    {
        let mut labels: Vec<String> = Vec::new();
        let mut buckets: Vec<Vec<Record>> = Vec::new();
        for (label, record) in records {
            match labels.iter().position(|l| *l == label) {
                Some(i) => buckets[i].push(record),
                None => {
                    labels.push(label);
                    buckets.push(vec![record]);
                }
            }
        }
        if labels.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut groups = Vec::with_capacity(labels.len());
        for (label, bucket) in labels.into_iter().zip(buckets) {
            groups.push((label, WeightedDistribution::from_records(bucket)?));
        }
        Ok(GroupedPopulation { groups })
    }

    pub fn groups(&self) -> &[(String, WeightedDistribution)] {
        &self.groups
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn total_weight(&self) -> f64 {
        self.groups.iter().map(|(_, d)| d.total_weight()).sum()
    }

    /// All records pooled back into one distribution.
    pub fn pooled(&self) -> WeightedDistribution {
        let records: Vec<Record> =
            self.groups.iter().flat_map(|(_, d)| d.records().iter().copied()).collect();
        WeightedDistribution::from_records(records).expect("groups hold validated records")
    }
}

/// Splits a label path like `"north/rural"` on `/`.
pub fn split_path(label: &str) -> Vec<&str> {
    label.split('/').collect()
}

/// A two-level partition: top-level branches, each holding labeled subgroups.
#[derive(Debug, Clone)]
pub struct Hierarchy {
    tops: Vec<(String, GroupedPopulation)>,
}

impl Hierarchy {
    /// Builds from records labeled with uniform two-component paths
    /// (`"top/sub"`). Any other depth is rejected.
    pub fn from_path_records<I>(records: I) -> Result<Self>
    where
        I: IntoIterator<Item = (String, Record)>,
    {
        let mut top_labels: Vec<String> = Vec::new();
        let mut buckets: Vec<Vec<(String, Record)>> = Vec::new();
        for (label, record) in records {
            let parts = split_path(&label);
            if parts.len() != 2 || parts.iter().any(|p| p.is_empty()) {
                return Err(Error::InconsistentHierarchy { label });
            }
            let (top, sub) = (parts[0].to_string(), parts[1].to_string());
            match top_labels.iter().position(|l| *l == top) {
                Some(i) => buckets[i].push((sub, record)),
                None => {
                    top_labels.push(top);
                    buckets.push(vec![(sub, record)]);
                }
            }
        }
        if top_labels.is_empty() {
            return Err(Error::EmptyInput);
        }
        let mut tops = Vec::with_capacity(top_labels.len());
        for (label, bucket) in top_labels.into_iter().zip(buckets) {
            tops.push((label, GroupedPopulation::from_labeled_records(bucket)?));
        }
        Ok(Hierarchy { tops })
    }

    pub fn tops(&self) -> &[(String, GroupedPopulation)] {
        &self.tops
    }

    /// The partition by top-level label only.
    pub fn top_level(&self) -> GroupedPopulation {
        let groups = self
            .tops
            .iter()
            .map(|(label, gp)| (label.clone(), gp.pooled()))
            .collect();
        GroupedPopulation::new(groups).expect("top labels are unique and non-empty")
    }
}
