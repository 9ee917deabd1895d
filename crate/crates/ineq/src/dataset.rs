//! CSV dataset ingestion.
//!
//! Expected layout: a header row, then one record per line. Columns are
//! matched by name, case-insensitively:
//!
//! - `income` (required): non-negative decimal, `.` as decimal point
//! - `weight` (optional): positive decimal, defaults to 1
//! - `group` (optional): slash-separated hierarchy path, e.g. `Americas/Mexico`
//!
//! Lines starting with `#` are comments. Fields are trimmed. Unknown columns
//! are ignored and reported as warnings; malformed values are rejected with
//! the offending line number.

use std::fs::File;
use std::io::Read;
use std::path::Path;

use csv::{ReaderBuilder, StringRecord, Trim};

use crate::distribution::{
    split_path, GroupedPopulation, Hierarchy, Record, WeightedDistribution,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct DatasetRecord {
    pub income: f64,
    pub weight: f64,
    pub group: Option<String>,
    /// 1-based line number in the source file, for error reporting.
    pub line: u64,
}

#[derive(Debug, Clone)]
pub struct Dataset {
    records: Vec<DatasetRecord>,
    warnings: Vec<String>,
}

fn field_error(line: u64, message: String) -> Error {
    Error::Dataset { line, message }
}

fn parse_number(row: &StringRecord, column: usize, name: &str, line: u64) -> Result<f64> {
    let raw = row.get(column).unwrap_or("");
    if raw.is_empty() {
        return Err(field_error(line, format!("empty value in column {name:?}")));
    }
    let value: f64 = raw
        .parse()
        .map_err(|_| field_error(line, format!("cannot parse {raw:?} in column {name:?}")))?;
    if !value.is_finite() {
        return Err(field_error(line, format!("non-finite value in column {name:?}")));
    }
    Ok(value)
}

impl Dataset {
    pub fn from_path<P: AsRef<Path>>(path: P) -> Result<Dataset> {
        Dataset::from_reader(File::open(path)?)
    }

    pub fn from_reader<R: Read>(reader: R) -> Result<Dataset> {
        let mut rdr = ReaderBuilder::new()
            .comment(Some(b'#'))
            .trim(Trim::All)
            .from_reader(reader);
        let headers = rdr.headers()?.clone();
        let mut warnings = Vec::new();
        let mut income_col = None;
        let mut weight_col = None;
        let mut group_col = None;
        for (i, name) in headers.iter().enumerate() {
            let slot = match name.to_ascii_lowercase().as_str() {
                "income" => &mut income_col,
                "weight" => &mut weight_col,
                "group" => &mut group_col,
                other => {
                    warnings.push(format!("ignoring unknown column {other:?}"));
                    continue;
                }
            };
            if slot.is_some() {
                warnings.push(format!("ignoring duplicate column {name:?}"));
            } else {
                *slot = Some(i);
            }
        }
        let income_col = income_col.ok_or_else(|| {
            field_error(1, "missing required column \"income\"".into())
        })?;
        let mut records = Vec::new();
        for row in rdr.records() {
            let row = row?;
            let line = row.position().map_or(0, |p| p.line());
            let income = parse_number(&row, income_col, "income", line)?;
            if income < 0.0 {
                return Err(field_error(line, format!("negative income {income}")));
            }
            let weight = match weight_col {
                Some(col) => {
                    let w = parse_number(&row, col, "weight", line)?;
                    if w <= 0.0 {
                        return Err(field_error(line, format!("weight must be positive, got {w}")));
                    }
                    w
                }
                None => 1.0,
            };
            let group = group_col.and_then(|col| {
                let raw = row.get(col).unwrap_or("");
                (!raw.is_empty()).then(|| raw.to_string())
            });
            records.push(DatasetRecord { income, weight, group, line });
        }
        if records.is_empty() {
            return Err(Error::EmptyInput);
        }
        Ok(Dataset { records, warnings })
    }

    pub fn records(&self) -> &[DatasetRecord] {
        &self.records
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// All records pooled, group labels ignored.
    pub fn distribution(&self) -> Result<WeightedDistribution> {
        WeightedDistribution::from_records(
            self.records.iter().map(|r| Record::new(r.income, r.weight)).collect(),
        )
    }

    /// Records grouped by the first component of their group path.
    pub fn grouped(&self) -> Result<GroupedPopulation> {
        if self.records.iter().all(|r| r.group.is_none()) {
            return Err(Error::MissingGroupColumn);
        }
        let labeled = self
            .records
            .iter()
            .map(|r| {
                let path = r.group.as_deref().ok_or_else(|| {
                    field_error(r.line, "record has no group label".into())
                })?;
                let top = split_path(path)[0];
                if top.is_empty() {
                    return Err(field_error(r.line, format!("empty group label in {path:?}")));
                }
                Ok((top.to_string(), Record::new(r.income, r.weight)))
            })
            .collect::<Result<Vec<_>>>()?;
        GroupedPopulation::from_labeled_records(labeled)
    }

    /// Records arranged as a two-level hierarchy; every group path must have
    /// exactly two components.
    pub fn hierarchy(&self) -> Result<Hierarchy> {
        if self.records.iter().all(|r| r.group.is_none()) {
            return Err(Error::MissingGroupColumn);
        }
        let labeled = self
            .records
            .iter()
            .map(|r| {
                let path = r.group.clone().ok_or_else(|| {
                    field_error(r.line, "record has no group label".into())
                })?;
                Ok((path, Record::new(r.income, r.weight)))
            })
            .collect::<Result<Vec<_>>>()?;
        Hierarchy::from_path_records(labeled)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<Dataset> {
        Dataset::from_reader(text.as_bytes())
    }

    #[test]
    fn reads_income_weight_and_group() {
        let ds = parse("income,weight,group\n10, 2 ,north\n20,1,south\n").unwrap();
        assert_eq!(ds.records().len(), 2);
        assert_eq!(ds.records()[0].weight, 2.0);
        assert_eq!(ds.records()[1].group.as_deref(), Some("south"));
        assert!(ds.warnings().is_empty());
        let d = ds.distribution().unwrap();
        assert_eq!(d.total_weight(), 3.0);
    }

    #[test]
    fn headers_match_case_insensitively_and_weight_defaults() {
        let ds = parse("INCOME\n5\n7\n").unwrap();
        assert_eq!(ds.records()[0].weight, 1.0);
        assert_eq!(ds.records()[1].income, 7.0);
    }

    #[test]
    fn leading_comments_are_skipped_and_counted() {
        let ds = parse("# header note\nincome\n1\n2\n").unwrap();
        assert_eq!(ds.records()[0].line, 3);
        assert_eq!(ds.records()[1].line, 4);
    }

    #[test]
    fn interior_comments_are_skipped() {
        let ds = parse("income\n1\n# note\n2\n").unwrap();
        let incomes: Vec<f64> = ds.records().iter().map(|r| r.income).collect();
        assert_eq!(incomes, vec![1.0, 2.0]);
    }

    #[test]
    fn unknown_columns_warn_but_parse() {
        let ds = parse("income,region_code\n1,77\n").unwrap();
        assert_eq!(ds.warnings().len(), 1);
        assert!(ds.warnings()[0].contains("region_code"));
    }

    #[test]
    fn missing_income_column_is_rejected() {
        let err = parse("weight\n1\n");
        assert!(matches!(err, Err(Error::Dataset { .. })));
    }

    #[test]
    fn malformed_values_carry_line_numbers() {
        let err = parse("income\n1\nabc\n").unwrap_err();
        match err {
            Error::Dataset { line, message } => {
                assert_eq!(line, 3);
                assert!(message.contains("abc"));
            }
            other => panic!("unexpected error {other:?}"),
        }
        let err = parse("income\n-4\n").unwrap_err();
        assert!(matches!(err, Error::Dataset { line: 2, .. }));
        let err = parse("income,weight\n4,0\n").unwrap_err();
        assert!(matches!(err, Error::Dataset { line: 2, .. }));
    }

    #[test]
    fn empty_datasets_are_rejected() {
        assert!(matches!(parse("income\n"), Err(Error::EmptyInput)));
    }

    #[test]
    fn grouping_uses_the_first_path_component() {
        let ds = parse(
            "income,group\n1,Americas/Mexico\n2,Americas/Chile\n3,Europe/Spain\n",
        )
        .unwrap();
        let gp = ds.grouped().unwrap();
        assert_eq!(gp.len(), 2);
        assert_eq!(gp.groups()[0].0, "Americas");
        assert_eq!(gp.groups()[0].1.len(), 2);
        let h = ds.hierarchy().unwrap();
        assert_eq!(h.tops().len(), 2);
    }

    #[test]
    fn grouping_without_group_column_is_rejected() {
        let ds = parse("income\n1\n2\n").unwrap();
        assert!(matches!(ds.grouped(), Err(Error::MissingGroupColumn)));
        assert!(matches!(ds.hierarchy(), Err(Error::MissingGroupColumn)));
    }

    #[test]
    fn partially_labeled_datasets_are_rejected() {
        let ds = parse("income,group\n1,north\n2,\n").unwrap();
        assert!(matches!(ds.grouped(), Err(Error::Dataset { line: 3, .. })));
    }

    #[test]
    fn mixed_depth_hierarchies_are_rejected() {
        let ds = parse("income,group\n1,a/b\n2,a\n").unwrap();
        assert!(matches!(ds.hierarchy(), Err(Error::InconsistentHierarchy { .. })));
    }
}
