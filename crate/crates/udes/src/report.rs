//! Report documents and their JSON and plain-text renderings.
//!
//! Both renderings print every number through `serde_json`, so they carry
//! the same digits. Table cells that hold an exact value (`0`, `1/2`, `pi`,
//! ...) keep the float next to its symbol; the text rendering shows the
//! symbol.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Num(f64),
    Exact { value: f64, exact: String },
    Text(String),
}

impl Cell {
    /// An exact cell when `x` is one of the recognized constants.
    pub fn number(x: f64) -> Cell {
        match exact_symbol(x) {
            Some(s) => Cell::Exact { value: x, exact: s },
            None => Cell::Num(x),
        }
    }

    pub fn text(s: impl Into<String>) -> Cell {
        Cell::Text(s.into())
    }

    pub fn render(&self) -> String {
        match self {
            Cell::Num(x) => number_string(*x),
            Cell::Exact { exact, .. } => exact.clone(),
            Cell::Text(s) => s.clone(),
        }
    }

    pub fn value(&self) -> Option<f64> {
        match self {
            Cell::Num(x) | Cell::Exact { value: x, .. } => Some(*x),
            Cell::Text(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub command: String,
    /// SHA-256 of the canonical inputs, hex.
    pub inputs_digest: String,
    pub tolerance: f64,
    pub verdicts: BTreeMap<String, bool>,
    pub values: BTreeMap<String, Value>,
    pub tables: Vec<Table>,
}

impl ReportDocument {
    pub fn new(command: &str, inputs: &[u8], tolerance: f64) -> Self {
        ReportDocument {
            command: command.to_string(),
            inputs_digest: hex::encode(Sha256::digest(inputs)),
            tolerance,
            verdicts: BTreeMap::new(),
            values: BTreeMap::new(),
            tables: Vec::new(),
        }
    }

    pub fn verdict(&mut self, name: &str, v: bool) -> &mut Self {
        self.verdicts.insert(name.to_string(), v);
        self
    }

    pub fn value(&mut self, name: &str, v: impl Serialize) -> &mut Self {
        self.values.insert(name.to_string(), serde_json::to_value(v).expect("plain data serializes"));
        self
    }

    pub fn table(&mut self, t: Table) -> &mut Self {
        self.tables.push(t);
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "inputs: sha256:{}", self.inputs_digest);
        let _ = writeln!(out, "tolerance: {}", number_string(self.tolerance));
        if !self.verdicts.is_empty() {
            out.push_str("verdicts:\n");
            for (k, v) in &self.verdicts {
                let _ = writeln!(out, "  {k}: {v}");
            }
        }
        if !self.values.is_empty() {
            out.push_str("values:\n");
            for (k, v) in &self.values {
                let _ = writeln!(out, "  {k}: {}", serde_json::to_string(v).expect("value serializes"));
            }
        }
        for t in &self.tables {
            let _ = writeln!(out, "table {}:", t.name);
            out.push_str(&render_table(t));
        }
        out
    }
}

fn render_table(t: &Table) -> String {
    let cells: Vec<Vec<String>> = t.rows.iter().map(|r| r.iter().map(Cell::render).collect()).collect();
    let mut widths: Vec<usize> = t.columns.iter().map(|c| c.chars().count()).collect();
    for row in &cells {
        for (i, c) in row.iter().enumerate() {
            if i < widths.len() {
                widths[i] = widths[i].max(c.chars().count());
            }
        }
    }
    let line = |items: &[String]| {
        let padded: Vec<String> = items
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let w = widths.get(i).copied().unwrap_or(0);
                format!("{s}{}", " ".repeat(w.saturating_sub(s.chars().count())))
            })
            .collect();
        format!("  {}\n", padded.join("  ").trim_end())
    };
    let mut out = line(&t.columns);
    for row in &cells {
        out.push_str(&line(row));
    }
    out
}

/// The digits `serde_json` writes for `x`.
pub fn number_string(x: f64) -> String {
    serde_json::to_string(&x).expect("f64 serializes")
}

const EXACT_TOL: f64 = 1e-12;

/// Symbolic form of `x` when it is `0`, `+-1/2`, `+-1`, `+-2`, a multiple
/// `k pi / 6` with `|k| <= 12`, or `+-2 pi / (3 sqrt 3)`.
pub fn exact_symbol(x: f64) -> Option<String> {
    let sign = if x < 0.0 { "-" } else { "" };
    let a = x.abs();
    if a <= EXACT_TOL {
        return Some("0".into());
    }
    for (v, s) in [(0.5, "1/2"), (1.0, "1"), (2.0, "2")] {
        if (a - v).abs() <= EXACT_TOL {
            return Some(format!("{sign}{s}"));
        }
    }
    if (a - 2.0 * PI / (3.0 * 3f64.sqrt())).abs() <= EXACT_TOL {
        return Some(format!("{sign}2π/(3√3)"));
    }
    let k = a / (PI / 6.0);
    let kr = k.round();
    if (k - kr).abs() <= EXACT_TOL && (1.0..=12.0).contains(&kr) {
        let k = kr as u32;
        let g = gcd(k, 6);
        let (num, den) = (k / g, 6 / g);
        let num = if num == 1 { String::new() } else { num.to_string() };
        return Some(if den == 1 { format!("{sign}{num}π") } else { format!("{sign}{num}π/{den}") });
    }
    None
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
