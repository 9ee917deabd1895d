//! Report assembly and serialization.
//!
//! Every command produces one [`Report`], rendered either as a JSON object
//! tagged with the command name or as flat CSV tables. Reports are a pure
//! function of the input data and flags: no paths, timestamps, or machine
//! identifiers, so byte-identical inputs give byte-identical reports.
//! JSON numbers use the shortest encoding that round-trips to the same
//! double, so parsing an emitted report recovers every value bit-exactly.

use serde::Serialize;

use crate::analytics::{LorenzCurve, LorenzPoint};
use crate::axioms::ComplianceMatrix;
use crate::decomposition::{DecompositionReport, HierarchicalDecomposition};
use crate::distribution::WeightedDistribution;
use crate::error::Result;
use crate::indices::IndexKind;
use crate::resampling::{BiasCurve, BootstrapSummary};

/// Summary of the data a report was computed from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InputDigest {
    pub records: usize,
    pub total_weight: f64,
    pub mean: f64,
    pub max_income: f64,
}

impl InputDigest {
    pub fn of(d: &WeightedDistribution) -> Self {
        InputDigest {
            records: d.len(),
            total_weight: d.total_weight(),
            mean: d.mean(),
            max_income: d.max_income(),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct IndexValue {
    #[serde(flatten)]
    pub kind: IndexKind,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Report {
    Compute {
        input: InputDigest,
        #[serde(skip_serializing_if = "Option::is_none")]
        groups: Option<usize>,
        values: Vec<IndexValue>,
    },
    Decompose {
        input: InputDigest,
        levels: u8,
        #[serde(skip_serializing_if = "Option::is_none")]
        flat: Option<DecompositionReport>,
        #[serde(skip_serializing_if = "Option::is_none")]
        nested: Option<HierarchicalDecomposition>,
    },
    Bootstrap {
        input: InputDigest,
        summary: BootstrapSummary,
    },
    Axioms {
        matrix: ComplianceMatrix,
    },
    Lorenz {
        input: InputDigest,
        delta: f64,
        points: Vec<LorenzPoint>,
        scaled_points: Vec<LorenzPoint>,
    },
    Bias {
        input: InputDigest,
        curves: Vec<BiasCurve>,
    },
}

impl Report {
    pub fn lorenz(input: InputDigest, curve: &LorenzCurve) -> Report {
        Report::Lorenz {
            input,
            delta: curve.delta,
            points: curve.points.clone(),
            scaled_points: curve.scaled_points(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn to_csv(&self) -> Result<String> {
        let blocks = match self {
            Report::Compute { values, .. } => {
                let mut rows = vec![vec!["index".into(), "value".into()]];
                for v in values {
                    rows.push(vec![v.kind.describe(), fmt(v.value)]);
                }
                vec![rows]
            }
            Report::Decompose { flat: Some(r), .. } => {
                let mut rows = vec![group_header(None)];
                for g in &r.groups {
                    rows.push(group_row(None, g));
                }
                vec![rows, component_rows(r)]
            }
            Report::Decompose { nested: Some(h), .. } => {
                let mut rows = vec![group_header(Some("branch"))];
                for b in &h.branches {
                    rows.push(vec![
                        b.label.clone(),
                        String::new(),
                        fmt(b.population_share),
                        fmt(b.income_share),
                        String::new(),
                        String::new(),
                        fmt(b.contribution),
                    ]);
                    for g in &b.groups {
                        rows.push(group_row(Some(&b.label), g));
                    }
                }
                vec![rows, component_rows(&h.top)]
            }
            Report::Decompose { .. } => unreachable!("decompose reports carry one layout"),
            Report::Bootstrap { summary: s, .. } => vec![vec![
                vec![
                    "index".into(),
                    "observed".into(),
                    "replicates".into(),
                    "replicate_mean".into(),
                    "standard_error".into(),
                    "cv_percent".into(),
                    "seed".into(),
                    "rejected".into(),
                ],
                vec![
                    s.index.clone(),
                    fmt(s.observed),
                    s.replicates.to_string(),
                    fmt(s.replicate_mean),
                    fmt(s.standard_error),
                    fmt(s.cv_percent),
                    s.seed.to_string(),
                    s.rejected.to_string(),
                ],
            ]],
            Report::Axioms { matrix } => {
                let mut rows = vec![vec![
                    "index".into(),
                    "axiom".into(),
                    "verdict".into(),
                    "trials".into(),
                    "seed".into(),
                    "detail".into(),
                ]];
                for v in &matrix.verdicts {
                    rows.push(vec![
                        v.index.clone(),
                        v.axiom.id(),
                        v.verdict.to_string(),
                        v.trials.to_string(),
                        v.seed.to_string(),
                        v.detail.clone().unwrap_or_default(),
                    ]);
                }
                let mut summary =
                    vec![vec!["index".into(), "satisfied".into(), "out_of".into()]];
                for s in &matrix.summaries {
                    summary.push(vec![
                        s.index.clone(),
                        s.satisfied.to_string(),
                        s.out_of.to_string(),
                    ]);
                }
                vec![rows, summary]
            }
            Report::Lorenz { delta, points, scaled_points, .. } => {
                let mut rows =
                    vec![vec!["population".into(), "income".into(), "scaled_income".into()]];
                for (p, s) in points.iter().zip(scaled_points) {
                    rows.push(vec![fmt(p.population), fmt(p.income), fmt(s.income)]);
                }
                vec![rows, vec![vec!["delta".into()], vec![fmt(*delta)]]]
            }
            Report::Bias { curves, .. } => {
                let mut rows = vec![vec![
                    "index".into(),
                    "micro".into(),
                    "groups".into(),
                    "value".into(),
                    "relative_bias".into(),
                ]];
                for c in curves {
                    for p in &c.points {
                        rows.push(vec![
                            c.index.clone(),
                            fmt(c.micro),
                            p.groups.to_string(),
                            fmt(p.value),
                            fmt(p.relative_bias),
                        ]);
                    }
                }
                vec![rows]
            }
        };
        let rendered = blocks
            .iter()
            .map(|rows| csv_block(rows))
            .collect::<Result<Vec<_>>>()?;
        Ok(rendered.join("\n"))
    }
}

// Shortest decimal that round-trips to the same double.
fn fmt(value: f64) -> String {
    format!("{value}")
}

fn group_header(prefix: Option<&str>) -> Vec<String> {
    let mut row: Vec<String> = Vec::new();
    if let Some(p) = prefix {
        row.push(p.into());
    }
    row.extend(
        [
            "group",
            "population_share",
            "income_share",
            "group_max",
            "idrm",
            "within_contribution",
        ]
        .map(String::from),
    );
    row
}

fn group_row(
    branch: Option<&str>,
    g: &crate::decomposition::GroupContribution,
) -> Vec<String> {
    let mut row: Vec<String> = Vec::new();
    if let Some(b) = branch {
        row.push(b.into());
    }
    row.extend([
        g.label.clone(),
        fmt(g.population_share),
        fmt(g.income_share),
        fmt(g.group_max),
        fmt(g.idrm),
        fmt(g.within_contribution),
    ]);
    row
}

fn component_rows(r: &DecompositionReport) -> Vec<Vec<String>> {
    vec![
        vec!["component".into(), "value".into()],
        vec!["within".into(), fmt(r.within)],
        vec!["between".into(), fmt(r.between)],
        vec!["total".into(), fmt(r.total)],
        vec!["residual".into(), fmt(r.residual)],
    ]
}

fn csv_block(rows: &[Vec<String>]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.write_record(row)?;
    }
    writer.flush()?;
    let bytes = writer.into_inner().expect("flushed writer cannot fail");
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}
