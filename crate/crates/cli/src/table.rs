//! Header-first CSV tables, written and read with the same schema rules.

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

/// Shortest decimal that parses back to the same `f64`.
pub fn fmt_f64(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else {
        format!("{v}")
    }
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert!(row.len() == self.header.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    /// Values of a numeric column, in row order.
    pub fn numbers(&self, name: &str) -> Result<Vec<f64>, CliError> {
        let c = self
            .column(name)
            .ok_or_else(|| CliError::Csv(format!("missing column `{name}`")))?;
        self.rows
            .iter()
            .map(|r| {
                let cell = r[c].trim();
                match cell {
                    "inf" => Ok(f64::INFINITY),
                    _ => cell
                        .parse()
                        .map_err(|_| CliError::Csv(format!("column `{name}`: `{cell}` is not a number"))),
                }
            })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.header).expect("writing to memory");
        for row in &self.rows {
            w.write_record(row).expect("writing to memory");
        }
        String::from_utf8(w.into_inner().expect("writing to memory")).expect("CSV of UTF-8 cells")
    }

    pub fn from_csv(text: &str) -> Result<Self, CliError> {
        let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
        let header: Vec<String> = r
            .headers()
            .map_err(|e| CliError::Csv(e.to_string()))?
            .iter()
            .map(str::to_string)
            .collect();
        if header.iter().all(|h| h.is_empty()) {
            return Err(CliError::Csv("no header row".into()));
        }
        let rows = r
            .records()
            .map(|rec| rec.map(|rec| rec.iter().map(str::to_string).collect()))
            .collect::<Result<_, _>>()
            .map_err(|e| CliError::Csv(e.to_string()))?;
        Ok(Self { header, rows })
    }
}
