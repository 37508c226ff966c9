//! Report rendering for the three output formats.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Value};
use trident::scalar::to_f64;
use trident::SolveResult;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

/// Command-specific fields appended after the report.
pub type Extra = Vec<(&'static str, Value)>;

pub struct Rendered<'a> {
    pub method: &'a str,
    /// Vertex count of the input graph.
    pub n: usize,
    pub result: SolveResult,
    pub extra: Extra,
}

const REPORT_COLUMNS: [&str; 11] = [
    "size", "edges", "cliques", "k", "triangles", "f_e", "f_t", "delta", "tau", "tpv", "vertices",
];

fn scalar_text(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn percent(size: usize, n: usize) -> f64 {
    if n == 0 {
        0.0
    } else {
        100.0 * size as f64 / n as f64
    }
}

impl Rendered<'_> {
    fn json(&self) -> Value {
        let mut object = Map::new();
        object.insert("method".into(), self.method.into());
        if let Value::Object(report) = serde_json::to_value(&self.result.report).expect("report serializes") {
            object.extend(report);
        }
        object.insert("density".into(), self.result.density.to_string().into());
        object.insert("density_value".into(), to_f64(&self.result.density).into());
        object.insert("no_clique".into(), self.result.no_clique.into());
        for (key, value) in &self.extra {
            object.insert((*key).into(), value.clone());
        }
        Value::Object(object)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => format!("{}\n", serde_json::to_string_pretty(&self.json()).expect("json")),
            Format::Csv => self.csv(),
            Format::Table => self.table(),
        }
    }

    fn csv(&self) -> String {
        let json = self.json();
        let mut header = vec!["method"];
        header.extend(REPORT_COLUMNS);
        header.extend(["density", "n"]);
        header.extend(self.extra.iter().map(|(key, _)| *key));
        let cells: Vec<String> = header
            .iter()
            .map(|&key| match key {
                "n" => self.n.to_string(),
                // labels are whitespace-free, so a space keeps the field comma-free
                "vertices" => self.result.report.vertices.join(" "),
                _ => scalar_text(&json[key]),
            })
            .collect();
        format!("{}\n{}\n", header.join(","), cells.join(","))
    }

    fn table(&self) -> String {
        let r = &self.result.report;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<18} {:>6} {:>9} {:>9} {:>7} {:>9} {:>7}",
            "method", "|S|", "|S|/|V|%", "delta", "f_e", "tpv", "f_t"
        );
        let _ = writeln!(
            out,
            "{:<18} {:>6} {:>9.1} {:>9.2} {:>7.3} {:>9.2} {:>7.3}",
            self.method,
            r.size,
            percent(r.size, self.n),
            r.delta,
            r.f_e,
            r.tpv,
            r.f_t
        );
        let _ = writeln!(out, "density: {} (k={})", self.result.density, r.k);
        for (key, value) in &self.extra {
            let _ = writeln!(out, "{key}: {}", scalar_text(value));
        }
        let _ = writeln!(out, "vertices: {}", r.vertices.join(" "));
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub epsilon: f64,
    pub rounds: usize,
    pub size: usize,
    pub density: f64,
    /// Batch density over the exact optimum.
    pub ratio: f64,
}

pub fn render_sweep(rows: &[SweepRow], format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(rows).expect("json")),
        Format::Csv => {
            let mut out = String::from("epsilon,rounds,size,density,ratio\n");
            for row in rows {
                let _ = writeln!(out, "{},{},{},{},{}", row.epsilon, row.rounds, row.size, row.density, row.ratio);
            }
            out
        }
        Format::Table => {
            let mut out = format!("{:>8} {:>7} {:>6} {:>10} {:>7}\n", "epsilon", "rounds", "|S|", "tau", "ratio");
            for row in rows {
                let _ = writeln!(
                    out,
                    "{:>8.2} {:>7} {:>6} {:>10.4} {:>7.4}",
                    row.epsilon, row.rounds, row.size, row.density, row.ratio
                );
            }
            out
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Stats {
    pub n: usize,
    pub m: usize,
    pub triangles: usize,
    pub max_tv: u64,
    pub f_e: f64,
    pub tau: f64,
}

impl Stats {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => format!("{}\n", serde_json::to_string_pretty(self).expect("json")),
            Format::Csv => format!(
                "n,m,triangles,max_tv,f_e,tau\n{},{},{},{},{},{}\n",
                self.n, self.m, self.triangles, self.max_tv, self.f_e, self.tau
            ),
            Format::Table => format!(
                "vertices   {}\nedges      {}\ntriangles  {}\nmax t_v    {}\nf_e        {:.4}\ntau        {:.4}\n",
                self.n, self.m, self.triangles, self.max_tv, self.f_e, self.tau
            ),
        }
    }
}
