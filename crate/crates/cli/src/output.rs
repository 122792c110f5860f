//! Deterministic data writers.
//!
//! CSV tables carry a mandatory header and 17-significant-digit scientific
//! notation — enough for a lossless f64 round trip, so identical configs
//! produce byte-identical data files and plots can be regression-tested
//! bit for bit. Every run also gets a JSON document with the resolved
//! config, grid metadata, the normalization the data integrates to, and
//! engine versions; of its fields only `runtime_seconds` varies between
//! identical runs.

use crate::config::{OutputFormat, RunConfig};
use serde_json::{json, Map, Value};
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

/// A rectangular table of f64 columns.
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: Vec<String>, rows: Vec<Vec<f64>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == columns.len()));
        Table { columns, rows }
    }
}

/// One CSV field: 17 significant digits, `.` decimal separator.
fn field(v: f64) -> String {
    format!("{v:.16e}")
}

fn csv_text(table: &Table) -> String {
    let mut s = String::with_capacity(32 * (table.rows.len() + 1));
    s.push_str(&table.columns.join(","));
    s.push('\n');
    for row in &table.rows {
        let mut first = true;
        for &v in row {
            if !first {
                s.push(',');
            }
            s.push_str(&field(v));
            first = false;
        }
        s.push('\n');
    }
    s
}

/// Environment variable prefixed to relative output paths.
pub const OUT_DIR_VAR: &str = "ATOMBS_OUT_DIR";

/// Resolve where the data file goes: explicit `output` (with the format's
/// extension appended when the name has none) or `<command>.<ext>`, placed
/// under `ATOMBS_OUT_DIR` when the path is relative.
pub fn data_path(cfg: &RunConfig) -> PathBuf {
    let ext = cfg.format.as_str();
    let mut path = match &cfg.output {
        Some(name) => {
            let p = PathBuf::from(name);
            if p.extension().is_some() {
                p
            } else {
                p.with_extension(ext)
            }
        }
        None => PathBuf::from(format!("{}.{ext}", cfg.command)),
    };
    if path.is_relative() {
        if let Ok(dir) = std::env::var(OUT_DIR_VAR) {
            if !dir.is_empty() {
                path = Path::new(&dir).join(path);
            }
        }
    }
    path
}

/// Paths written by a run.
pub struct WrittenFiles {
    pub data: PathBuf,
    pub sidecar: Option<PathBuf>,
}

fn metadata(
    cfg: &RunConfig,
    grid: Value,
    normalization: Option<f64>,
    runtime_seconds: f64,
) -> Value {
    json!({
        "config": cfg,
        "grid": grid,
        "normalization": normalization,
        "runtime_seconds": runtime_seconds,
        "engine_versions": {
            "atombs": atombs::VERSION,
            "atombs-cli": env!("CARGO_PKG_VERSION"),
        },
    })
}

/// Write the table and its metadata. `csv` format produces `<path>` plus a
/// `<path stem>.meta.json` sidecar; `json` produces one document holding
/// both the metadata and the rows.
pub fn write_run(
    cfg: &RunConfig,
    table: &Table,
    grid: Value,
    normalization: Option<f64>,
    runtime_seconds: f64,
) -> io::Result<WrittenFiles> {
    let path = data_path(cfg);
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    let meta = metadata(cfg, grid, normalization, runtime_seconds);
    match cfg.format {
        OutputFormat::Csv => {
            fs::write(&path, csv_text(table))?;
            let sidecar = path.with_extension("meta.json");
            fs::write(&sidecar, serde_json::to_string_pretty(&meta)? + "\n")?;
            Ok(WrittenFiles { data: path, sidecar: Some(sidecar) })
        }
        OutputFormat::Json => {
            let mut doc = match meta {
                Value::Object(m) => m,
                _ => Map::new(),
            };
            doc.insert("columns".into(), json!(table.columns));
            doc.insert("rows".into(), json!(table.rows));
            fs::write(&path, serde_json::to_string_pretty(&Value::Object(doc))? + "\n")?;
            Ok(WrittenFiles { data: path, sidecar: None })
        }
    }
}
