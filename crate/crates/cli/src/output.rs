//! CSV and JSON result files. Every file starts with the resolved config.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};

/// A table with a fixed header; cells are already formatted.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// CSV text, preceded by a `# config=<json>` line.
    pub fn to_csv(&self, config: &RunConfig) -> CliResult<Vec<u8>> {
        let mut buf = format!("# config={}\n", config.to_json()).into_bytes();
        {
            let mut w = csv::Writer::from_writer(&mut buf);
            w.write_record(&self.header)?;
            for row in &self.rows {
                w.write_record(row)?;
            }
            w.flush().map_err(|e| CliError::io("<csv buffer>", e))?;
        }
        Ok(buf)
    }

    /// Fixed-width text for the terminal.
    pub fn render(&self) -> String {
        let widths: Vec<usize> = (0..self.header.len())
            .map(|j| {
                self.rows
                    .iter()
                    .map(|r| r[j].len())
                    .chain(std::iter::once(self.header[j].len()))
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: Vec<&str>| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        };
        let mut out = line(self.header.clone());
        for r in &self.rows {
            out.push('\n');
            out.push_str(&line(r.iter().map(String::as_str).collect()));
        }
        out
    }
}

/// Shortest round-trip formatting; identical across runs and platforms.
pub fn num(x: f64) -> String {
    format!("{x}")
}

pub fn out_path(config: &RunConfig, name: &str) -> CliResult<Option<PathBuf>> {
    let Some(dir) = &config.out else {
        return Ok(None);
    };
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    Ok(Some(dir.join(name)))
}

pub fn write_bytes(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let mut f = std::fs::File::create(path).map_err(|e| CliError::io(path, e))?;
    f.write_all(bytes).map_err(|e| CliError::io(path, e))
}

/// Writes `<out>/<stem>.csv` when an output directory is configured.
pub fn write_table(config: &RunConfig, stem: &str, table: &Table) -> CliResult<()> {
    if let Some(path) = out_path(config, &format!("{stem}.csv"))? {
        write_bytes(&path, &table.to_csv(config)?)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct Mirror<'a, T: Serialize> {
    config: &'a RunConfig,
    #[serde(flatten)]
    body: &'a T,
}

/// Writes `<out>/<stem>.json` as `{"config": ..., <body fields>}`.
pub fn write_json<T: Serialize>(config: &RunConfig, stem: &str, body: &T) -> CliResult<()> {
    if let Some(path) = out_path(config, &format!("{stem}.json"))? {
        let mut text = serde_json::to_string_pretty(&Mirror { config, body }).expect("serialisable");
        text.push('\n');
        write_bytes(&path, text.as_bytes())?;
    }
    Ok(())
}
