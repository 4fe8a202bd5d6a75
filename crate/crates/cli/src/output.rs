use std::str::FromStr;

use clap::ValueEnum;
use fishburn_core::genfun::Triangle;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Number;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Csv,
    Json,
    Bfile,
}

/// JSON layout shared by triangles and distributions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowsDocument {
    pub rows: Vec<Vec<Number>>,
}

impl RowsDocument {
    pub fn from_rows(rows: &[Vec<BigInt>]) -> Self {
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|v| Number::from_str(&v.to_string()).expect("integer literal"))
                    .collect()
            })
            .collect();
        RowsDocument { rows }
    }
}

pub fn render(t: &Triangle, from: usize, format: Format) -> String {
    match format {
        Format::Table => t.to_table(from),
        Format::Csv => t.to_csv(from),
        Format::Bfile => t.to_bfile(from),
        Format::Json => {
            let rows = &t.rows()[from.min(t.len())..];
            let doc = RowsDocument::from_rows(rows);
            serde_json::to_string(&doc).expect("serializable") + "\n"
        }
    }
}

/// Comma-separated list.
pub fn joined<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Concatenated displays, for payloads such as `(4,1)(6,1)`.
pub fn concatenated<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect()
}
