//! Column tables with a metadata block, written as CSV or JSON.

use std::io::Write;

use serde_json::{json, Value};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(CliError::Config(format!("format must be csv or json, got `{other}`"))),
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ResultTable {
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<Column>,
}

/// 17 significant digits: enough to read every `f64` back exactly.
pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

impl ResultTable {
    pub fn meta(&mut self, key: impl Into<String>, value: impl ToString) {
        self.metadata.push((key.into(), value.to_string()));
    }

    pub fn meta_value(&self, key: &str) -> Option<&str> {
        self.metadata.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn push_column(&mut self, name: impl Into<String>, values: Vec<f64>) {
        if let Some(first) = self.columns.first() {
            assert_eq!(first.values.len(), values.len(), "columns must have equal length");
        }
        self.columns.push(Column {
            name: name.into(),
            values,
        });
    }

    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.columns.iter().find(|c| c.name == name).map(|c| c.values.as_slice())
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, |c| c.values.len())
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> std::io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.to_json())?;
                writeln!(out)
            }
        }
    }

    pub fn write_csv(&self, out: &mut impl Write) -> std::io::Result<()> {
        for (k, v) in &self.metadata {
            writeln!(out, "# {k} = {v}")?;
        }
        let names: Vec<&str> = self.columns.iter().map(|c| c.name.as_str()).collect();
        writeln!(out, "{}", names.join(","))?;
        for r in 0..self.rows() {
            let row: Vec<String> = self.columns.iter().map(|c| format_value(c.values[r])).collect();
            writeln!(out, "{}", row.join(","))?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let metadata: Vec<Value> = self.metadata.iter().map(|(k, v)| json!({ "key": k, "value": v })).collect();
        let columns: Vec<Value> = self
            .columns
            .iter()
            .map(|c| json!({ "name": c.name, "values": c.values }))
            .collect();
        json!({ "metadata": metadata, "columns": columns })
    }

    pub fn from_csv_str(text: &str) -> Result<Self> {
        let bad = |m: String| CliError::Config(format!("malformed table: {m}"));
        let mut table = ResultTable::default();
        let mut header: Option<Vec<String>> = None;
        let mut data: Vec<Vec<f64>> = Vec::new();
        for line in text.lines() {
            if let Some(rest) = line.strip_prefix("# ") {
                let (k, v) = rest.split_once(" = ").ok_or_else(|| bad(format!("metadata line `{line}`")))?;
                table.meta(k, v);
            } else if header.is_none() {
                let names: Vec<String> = line.split(',').map(str::to_string).collect();
                data = vec![Vec::new(); names.len()];
                header = Some(names);
            } else {
                let fields: Vec<&str> = line.split(',').collect();
                if fields.len() != data.len() {
                    return Err(bad(format!("row `{line}` has {} fields", fields.len())));
                }
                for (col, f) in data.iter_mut().zip(fields) {
                    col.push(f.parse().map_err(|_| bad(format!("number `{f}`")))?);
                }
            }
        }
        for (name, values) in header.unwrap_or_default().into_iter().zip(data) {
            table.push_column(name, values);
        }
        Ok(table)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let bad = |m: &str| CliError::Config(format!("malformed table: {m}"));
        let v: Value = serde_json::from_str(text).map_err(|e| bad(&e.to_string()))?;
        let mut table = ResultTable::default();
        for m in v["metadata"].as_array().ok_or_else(|| bad("metadata"))? {
            match (m["key"].as_str(), m["value"].as_str()) {
                (Some(k), Some(val)) => table.meta(k, val),
                _ => return Err(bad("metadata entry")),
            }
        }
        for c in v["columns"].as_array().ok_or_else(|| bad("columns"))? {
            let name = c["name"].as_str().ok_or_else(|| bad("column name"))?;
            let values = c["values"]
                .as_array()
                .ok_or_else(|| bad("column values"))?
                .iter()
                // JSON has no NaN; the writer emits it as null.
                .map(|x| if x.is_null() { Some(f64::NAN) } else { x.as_f64() }.ok_or_else(|| bad("column value")))
                .collect::<Result<Vec<f64>>>()?;
            table.push_column(name, values);
        }
        Ok(table)
    }
}

/// Plotting script for a CSV table: first column against every other one.
pub fn gnuplot_script(table: &ResultTable, csv_name: &str, title: &str, log_y: bool) -> String {
    let mut s = String::new();
    s.push_str(&format!("# gnuplot script for {csv_name}\n"));
    s.push_str("set datafile separator ','\n");
    s.push_str("set key autotitle columnhead\n");
    s.push_str(&format!("set title '{title}'\n"));
    if let Some(first) = table.columns.first() {
        s.push_str(&format!("set xlabel '{}'\n", first.name));
    }
    if log_y {
        s.push_str("set logscale y\n");
    }
    let plots: Vec<String> = (2..=table.columns.len())
        .map(|k| {
            let file = if k == 2 { format!("'{csv_name}'") } else { "''".to_string() };
            format!("{file} using 1:{k} with lines")
        })
        .collect();
    s.push_str(&format!("plot {}\n", plots.join(", \\\n     ")));
    s
}
