//! CSV tables and JSON reports written by the runners.
//!
//! The JSON body is a deterministic function of the configuration and seed;
//! wall times live in a separate `timing` block.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Result;
use crate::lab::config::ExperimentConfig;

/// Library version with the commit it was built from.
pub const VERSION: &str = concat!("v", env!("CARGO_PKG_VERSION"), "-g", env!("BWLAB_GIT_REV"));

pub const NORM_SWEEP_HEADER: &str = "h,s,C,N,M,route,norm,bound,ratio_flag";
pub const GEVREY_FIT_HEADER: &str = "symbol,s_nominal,rho_fit,C_fit,residual,window,flag";
pub const DECOMP_CHECK_HEADER: &str = "h,N,max_rel_diff,M_h,M_h_over_h_n";
pub const COMPOSE_HEADER: &str = "pair,h,M,x_re,x_im,direct_re,direct_im,fourier_re,fourier_im,rel_diff";
pub const VERIFY_HEADER: &str = "criterion,name,passed,expected_divergence,tolerance";

/// The knobs every record carries, so no number is separated from the
/// parameters that produced it. Fields that do not apply are null.
#[allow(non_snake_case)]
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Echo {
    pub h: Value,
    pub N: Option<usize>,
    pub M: Option<usize>,
    pub R: Option<f64>,
    pub s: Option<f64>,
    pub C: Option<f64>,
}

impl Echo {
    pub fn from_config(cfg: &ExperimentConfig, h: f64) -> Self {
        Self { h: h.into(), N: Some(cfg.N), M: Some(cfg.M), R: cfg.R, s: Some(cfg.s), C: Some(cfg.C) }
    }

    /// Merges the echo fields into a record object.
    pub fn record(&self, fields: Value) -> Value {
        let mut obj = serde_json::to_value(self).expect("echo serializes");
        if let (Value::Object(o), Value::Object(f)) = (&mut obj, fields) {
            o.extend(f);
        }
        obj
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Provenance {
    pub version: String,
    pub command: String,
    pub seed: u64,
    pub config: ExperimentConfig,
    pub tolerances: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Timing {
    pub total_seconds: f64,
    /// Wall time of each record, in record order.
    pub record_seconds: Vec<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub provenance: Provenance,
    pub records: Vec<Value>,
    pub summary: Value,
    pub warnings: Vec<String>,
    /// False when an invariant or tolerance check failed.
    pub passed: bool,
    pub timing: Timing,
}

impl Report {
    pub fn new(command: &str, cfg: &ExperimentConfig, tolerances: BTreeMap<String, f64>) -> Self {
        Self {
            provenance: Provenance { version: VERSION.into(), command: command.into(), seed: cfg.seed, config: cfg.clone(), tolerances },
            records: Vec::new(),
            summary: Value::Null,
            warnings: Vec::new(),
            passed: true,
            timing: Timing::default(),
        }
    }

    /// The report without its timing block.
    pub fn body(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Value::Object(o) = &mut v {
            o.remove("timing");
        }
        v
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// A CSV table with a fixed header.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub header: &'static str,
    pub rows: Vec<String>,
}

impl Table {
    pub fn new(header: &'static str) -> Self {
        Self { header, rows: Vec::new() }
    }

    pub fn push<I: IntoIterator<Item = String>>(&mut self, cells: I) {
        self.rows.push(cells.into_iter().map(|c| csv_cell(&c)).collect::<Vec<_>>().join(","));
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{}", self.header).unwrap();
        for r in &self.rows {
            writeln!(s, "{r}").unwrap();
        }
        s
    }
}

/// Quotes a cell containing separators or quotes.
fn csv_cell(c: &str) -> String {
    if c.contains([',', '"', '\n']) {
        format!("\"{}\"", c.replace('"', "\"\""))
    } else {
        c.to_string()
    }
}

/// Writes `<out>/<csv>` and `<out>/<json>`, creating the directory; file
/// names default to the command name. Returns both paths.
pub fn write_outputs(out: &Path, cfg: &ExperimentConfig, command: &str, table: &Table, report: &Report) -> Result<(PathBuf, PathBuf)> {
    std::fs::create_dir_all(out)?;
    let stem = command.replace('-', "_");
    let csv = out.join(cfg.output.csv.clone().unwrap_or_else(|| format!("{stem}.csv")));
    let json = out.join(cfg.output.json.clone().unwrap_or_else(|| format!("{stem}.json")));
    std::fs::write(&csv, table.render())?;
    std::fs::write(&json, report.to_json())?;
    Ok((csv, json))
}
