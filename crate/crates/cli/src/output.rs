//! Output documents. Every document carries the tool version, the resolved
//! configuration, the seed and the input digests, in all three formats.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::args::Format;
use crate::input::InputDigest;

/// A named rectangular block of cells for the CSV and table renderings.
#[derive(Debug, Clone)]
pub struct Table {
    pub name: &'static str,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &'static str, header: &[&str]) -> Self {
        Table {
            name,
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Serialize)]
pub struct Document {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub config: BTreeMap<&'static str, Value>,
    pub seed: Option<u64>,
    pub inputs: Vec<InputDigest>,
    pub result: Value,
    #[serde(skip)]
    pub tables: Vec<Table>,
}

impl Document {
    pub fn new(command: &'static str) -> Self {
        Document {
            tool: "agreeloss",
            version: env!("CARGO_PKG_VERSION"),
            command,
            config: BTreeMap::new(),
            seed: None,
            inputs: Vec::new(),
            result: Value::Null,
            tables: Vec::new(),
        }
    }

    pub fn set(&mut self, key: &'static str, value: impl Serialize) {
        let value = serde_json::to_value(value).expect("configuration values serialize");
        self.config.insert(key, value);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("document serializes");
                s.push('\n');
                s
            }
            Format::Csv => self.render_csv(),
            Format::Table => self.render_table(),
        }
    }

    fn preamble(&self) -> String {
        let mut s = String::new();
        let config = serde_json::to_string(&self.config).expect("configuration serializes");
        let _ = writeln!(s, "# tool: {} {}", self.tool, self.version);
        let _ = writeln!(s, "# command: {}", self.command);
        let _ = writeln!(s, "# config: {config}");
        match self.seed {
            Some(seed) => {
                let _ = writeln!(s, "# seed: {seed}");
            }
            None => s.push_str("# seed: none\n"),
        }
        for input in &self.inputs {
            let _ = writeln!(s, "# input: {} sha256={}", input.path, input.sha256);
        }
        s
    }

    fn render_csv(&self) -> String {
        let mut out = self.preamble();
        let many = self.tables.len() > 1;
        for (i, table) in self.tables.iter().enumerate() {
            if many {
                if i > 0 {
                    out.push('\n');
                }
                let _ = writeln!(out, "# table: {}", table.name);
            }
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&table.header).expect("in-memory write");
            for row in &table.rows {
                w.write_record(row).expect("in-memory write");
            }
            out.push_str(
                &String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8"),
            );
        }
        out
    }

    fn render_table(&self) -> String {
        let mut out = self.preamble();
        for table in &self.tables {
            out.push('\n');
            let _ = writeln!(out, "[{}]", table.name);
            let mut widths: Vec<usize> = table.header.iter().map(|h| h.chars().count()).collect();
            for row in &table.rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.chars().count());
                }
            }
            let line = |cells: &[String]| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}", w = *w))
                    .collect();
                padded.join("  ").trim_end().to_string()
            };
            let _ = writeln!(out, "{}", line(&table.header));
            let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
            let _ = writeln!(out, "{}", rule.join("  "));
            for row in &table.rows {
                let _ = writeln!(out, "{}", line(row));
            }
        }
        out
    }
}

/// Shortest round-trip decimal; `undefined` for a missing value.
pub fn cell(v: Option<f64>) -> String {
    match v {
        Some(v) => v.to_string(),
        None => "undefined".to_string(),
    }
}

/// Number or the string `"undefined"` for JSON.
pub fn json_value(v: Option<f64>) -> Value {
    match v {
        Some(v) => serde_json::json!(v),
        None => Value::String("undefined".into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Document {
        let mut d = Document::new("metrics");
        d.set("metrics", ["lw", "mse"]);
        d.seed = Some(7);
        d.inputs.push(InputDigest {
            path: "pairs.csv".into(),
            sha256: "ab".repeat(32),
        });
        let mut t = Table::new("metrics", &["metric", "value"]);
        t.push(vec!["lw".into(), cell(Some(0.2))]);
        t.push(vec!["nse".into(), cell(None)]);
        d.tables.push(t);
        d.result = serde_json::json!({"ok": true});
        d
    }

    #[test]
    fn csv_has_commented_metadata_then_table() {
        let s = sample().render(Format::Csv);
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0], "# tool: agreeloss 0.1.0");
        assert_eq!(lines[2], r#"# config: {"metrics":["lw","mse"]}"#);
        assert_eq!(lines[3], "# seed: 7");
        assert!(lines[4].starts_with("# input: pairs.csv sha256=abab"));
        assert_eq!(&lines[5..], &["metric,value", "lw,0.2", "nse,undefined"]);
    }

    #[test]
    fn table_aligns_columns() {
        let s = sample().render(Format::Table);
        assert!(
            s.contains(
                "metric      value\n------  ---------\n    lw        0.2\n   nse  undefined\n"
            ),
            "{s}"
        );
    }

    #[test]
    fn json_embeds_metadata() {
        let v: Value = serde_json::from_str(&sample().render(Format::Json)).unwrap();
        assert_eq!(v["version"], "0.1.0");
        assert_eq!(v["seed"], 7);
        assert_eq!(v["inputs"][0]["path"], "pairs.csv");
        assert_eq!(v["result"]["ok"], true);
    }
}
