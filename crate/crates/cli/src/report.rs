use std::io::Write;
use std::path::Path;

use graphcat::graph::io::from_json;
use graphcat::graph::io::to_json;
use graphcat::MultiGraph;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Serialize)]
pub struct Input {
    pub source: String,
    pub sha256: String,
}

impl Input {
    pub fn new(source: impl Into<String>, bytes: &[u8]) -> Self {
        Self {
            source: source.into(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

/// A graph from a JSON file, or `corpus:<id>` for a built-in corpus graph.
pub fn load_graph(spec: &str) -> Result<(MultiGraph, Input), String> {
    if let Some(id) = spec.strip_prefix("corpus:") {
        let corpus = graphcat::corpus::acceptance_corpus();
        let g = graphcat::corpus::find(&corpus, id)
            .ok_or_else(|| format!("no corpus graph with id {id}"))?;
        let text = to_json(&g);
        return Ok((g, Input::new(spec, text.as_bytes())));
    }
    let bytes = std::fs::read(Path::new(spec)).map_err(|e| format!("{spec}: {e}"))?;
    let text = String::from_utf8(bytes.clone()).map_err(|e| format!("{spec}: {e}"))?;
    let g = from_json(&text).map_err(|e| format!("{spec}: {e}"))?;
    Ok((g, Input::new(spec, &bytes)))
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    /// Two-column key/value table.
    pub fn pairs(items: &[(&str, String)]) -> Self {
        let mut t = Self::new(&["key", "value"]);
        for (k, v) in items {
            t.push(vec![k.to_string(), v.clone()]);
        }
        t
    }
}

pub struct Report {
    pub command: String,
    pub inputs: Vec<Input>,
    pub params: Value,
    pub result: Value,
    pub table: Table,
    /// False when a requested assertion failed.
    pub ok: bool,
}

impl Report {
    pub fn new(command: &str, inputs: Vec<Input>, params: impl Serialize) -> Self {
        Self {
            command: command.into(),
            inputs,
            params: serde_json::to_value(params).expect("params serialize"),
            result: Value::Null,
            table: Table::default(),
            ok: true,
        }
    }

    fn header(&self) -> Value {
        json!({
            "tool": "graphcat",
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "inputs": self.inputs,
            "params": self.params,
        })
    }

    pub fn render(&self, csv_format: bool) -> Result<Vec<u8>, String> {
        if !csv_format {
            let mut out = serde_json::to_vec_pretty(
                &json!({ "header": self.header(), "result": self.result }),
            )
            .map_err(|e| e.to_string())?;
            out.push(b'\n');
            return Ok(out);
        }
        let mut out = Vec::new();
        writeln!(out, "# tool: graphcat {}", env!("CARGO_PKG_VERSION")).unwrap();
        writeln!(out, "# command: {}", self.command).unwrap();
        for i in &self.inputs {
            writeln!(out, "# input: {} sha256={}", i.source, i.sha256).unwrap();
        }
        writeln!(out, "# params: {}", self.params).unwrap();
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.table.columns)
            .map_err(|e| e.to_string())?;
        for r in &self.table.rows {
            w.write_record(r).map_err(|e| e.to_string())?;
        }
        w.into_inner().map_err(|e| e.to_string())
    }
}

/// Integers that fit in `i64` as JSON numbers, others as decimal strings.
pub fn big(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => Value::String(x.to_string()),
    }
}

pub fn bigs(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(big).collect())
}

pub fn rat(x: &BigRational) -> Value {
    if x.is_integer() {
        big(x.numer())
    } else {
        Value::String(x.to_string())
    }
}

pub fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}
