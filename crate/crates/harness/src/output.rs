//! Deterministic JSON and CSV emission.

use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::error::{HarnessError, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Generator description written into every output.
pub const RNG: &str = "ChaCha8 (rand_chacha), seeded per user seed with one stream per purpose";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Rounds to 12 significant digits; non-finite values pass through.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        round_sig(x).to_string()
    }
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().expect("f64 number"));
            *v = serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number);
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Pretty JSON with struct field order kept and floats rounded.
pub fn to_json<T: Serialize>(record: &T) -> String {
    let mut value = serde_json::to_value(record).expect("records serialize");
    round_value(&mut value);
    let mut text = serde_json::to_string_pretty(&value).expect("values serialize");
    text.push('\n');
    text
}

/// A CSV table preceded by `# key: value` metadata lines.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CsvTable {
    pub metadata: Vec<(String, String)>,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        let mut table = Self { header: header.iter().map(|h| h.to_string()).collect(), ..Self::default() };
        table.meta("version", VERSION);
        table
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.metadata.push((key.to_string(), value.to_string()));
        self
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    pub fn render(&self) -> Result<String> {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            out.push_str(&format!("# {k}: {v}\n"));
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        let bytes = w.into_inner().map_err(|e| HarnessError::Csv(e.into_error().into()))?;
        out.push_str(&String::from_utf8(bytes).expect("csv output is utf-8"));
        Ok(out)
    }
}

/// Writes through a temporary sibling and renames, so readers never see partial files.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let io = |e| HarnessError::Io { path: path.to_path_buf(), source: e };
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".partial");
    fs::write(&tmp, contents).map_err(io)?;
    fs::rename(&tmp, path).map_err(io)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(round_sig(0.447_479_281_234_567_89), 0.447_479_281_235);
        assert_eq!(round_sig(8.0 / 3.0), 2.666_666_666_67);
        assert_eq!(fmt_num(1.0), "1");
        assert_eq!(fmt_num(f64::INFINITY), "inf");
    }

    #[derive(Serialize)]
    struct Rec {
        zeta: f64,
        alpha: Option<f64>,
        list: Vec<f64>,
    }

    #[test]
    fn json_keeps_field_order_and_rounds() {
        let s = to_json(&Rec { zeta: 1.0 / 3.0, alpha: None, list: vec![2.0 / 3.0] });
        assert!(s.find("zeta").unwrap() < s.find("alpha").unwrap());
        assert!(s.contains("0.333333333333"));
        assert!(!s.contains("0.3333333333333"));
        assert!(s.contains("\"alpha\": null"));
    }

    #[test]
    fn csv_metadata_lines() {
        let mut t = CsvTable::new(&["edge", "count"]);
        t.meta("seed", 42);
        t.row(vec!["0.5".into(), "3".into()]);
        let s = t.render().unwrap();
        assert_eq!(s, format!("# version: {VERSION}\n# seed: 42\nedge,count\n0.5,3\n"));
    }
}
