//! JSON, CSV and text renderings of joint tables.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::dist::JointTable;
use crate::error::{Error, Result};
use crate::mesh::MeshPattern;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    ClosedForm,
    BruteForce,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(Error::Parse(format!("unknown format `{other}`"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "text",
        })
    }
}

#[derive(Serialize)]
struct TableRecord<'a> {
    n: usize,
    q1: String,
    q2: String,
    counts: &'a [Vec<u64>],
    #[serde(skip_serializing_if = "Option::is_none")]
    source: Option<Source>,
}

/// `{"n":..,"q1":..,"q2":..,"counts":[[..]]}` with an optional `source`.
pub fn table_json(
    table: &JointTable,
    q1: &MeshPattern,
    q2: &MeshPattern,
    source: Option<Source>,
) -> String {
    let record = TableRecord {
        n: table.n(),
        q1: q1.to_string(),
        q2: q2.to_string(),
        counts: table.rows(),
        source,
    };
    serde_json::to_string(&record).expect("table record serializes")
}

/// `k,l,count` header, then one row per nonzero cell sorted by `(k, ℓ)`.
pub fn table_csv(table: &JointTable) -> String {
    let mut out = String::from("k,l,count\n");
    for (k, l, v) in table.nonzero_cells() {
        out.push_str(&format!("{k},{l},{v}\n"));
    }
    out
}

/// The generating polynomial, e.g. `x + y + 4`.
pub fn table_text(table: &JointTable) -> String {
    table.to_polynomial().to_string()
}

pub fn render(
    format: Format,
    table: &JointTable,
    q1: &MeshPattern,
    q2: &MeshPattern,
    source: Option<Source>,
) -> String {
    match format {
        Format::Json => table_json(table, q1, q2, source),
        Format::Csv => table_csv(table),
        Format::Text => table_text(table),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> (JointTable, MeshPattern, MeshPattern) {
        (
            JointTable::from_rows(3, vec![vec![4, 1], vec![1, 0]]),
            "123|0,0".parse().unwrap(),
            "321|".parse().unwrap(),
        )
    }

    #[test]
    fn json_shape() {
        let (t, q1, q2) = sample();
        assert_eq!(
            table_json(&t, &q1, &q2, None),
            r#"{"n":3,"q1":"123|0,0","q2":"321|","counts":[[4,1],[1,0]]}"#
        );
        let with_source = table_json(&t, &q1, &q2, Some(Source::ClosedForm));
        assert!(with_source.ends_with(r#","source":"closed_form"}"#));
    }

    #[test]
    fn csv_rows_sorted_nonzero() {
        let (t, _, _) = sample();
        assert_eq!(table_csv(&t), "k,l,count\n0,0,4\n0,1,1\n1,0,1\n");
    }

    #[test]
    fn text_is_polynomial() {
        let (t, q1, q2) = sample();
        assert_eq!(render(Format::Text, &t, &q1, &q2, None), "x + y + 4");
        assert_eq!("csv".parse::<Format>().unwrap(), Format::Csv);
        assert!("xml".parse::<Format>().is_err());
    }
}
