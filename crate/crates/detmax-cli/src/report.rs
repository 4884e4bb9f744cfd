//! Report emission: JSON (one object, or JSON Lines for multi-run
//! commands), CSV, stdout or file.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;

use anyhow::Result;
use serde::Serialize;

use crate::args::{OutputArgs, OutputFormat};

pub const SCHEMA: &str = "v1";

/// Accumulates output lines and flushes them to stdout or `--out` in one
/// shot, so ordering is by construction and never by completion.
pub struct Emitter {
    lines: Vec<String>,
    format: OutputFormat,
    quiet: bool,
}

impl Emitter {
    pub fn new(args: &OutputArgs) -> Self {
        Self {
            lines: Vec::new(),
            format: args.format,
            quiet: args.quiet,
        }
    }

    pub fn format(&self) -> OutputFormat {
        self.format
    }

    /// One JSON object per call: a whole report or one JSONL line.
    pub fn json(&mut self, value: &impl Serialize) -> Result<()> {
        self.lines.push(serde_json::to_string(value)?);
        Ok(())
    }

    /// One raw (already formatted) CSV line.
    pub fn csv_line(&mut self, line: String) {
        self.lines.push(line);
    }

    /// Human-readable progress note on stderr, silenced by --quiet.
    pub fn note(&self, message: &str) {
        if !self.quiet {
            eprintln!("{message}");
        }
    }

    pub fn flush(self, args: &OutputArgs) -> Result<()> {
        let mut body = String::new();
        for line in &self.lines {
            body.push_str(line);
            body.push('\n');
        }
        match &args.out {
            Some(path) => fs::write(path, body)?,
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(body.as_bytes())?;
            }
        }
        Ok(())
    }
}

/// Shortest round-trip decimal for CSV cells; zero volume prints as
/// `-inf`, mirroring JSON's `null`.
pub fn csv_f64(v: f64) -> String {
    if v == f64::NEG_INFINITY {
        "-inf".to_string()
    } else if v == f64::INFINITY {
        "inf".to_string()
    } else {
        format!("{v}")
    }
}

pub fn csv_indices(indices: &[usize]) -> String {
    let mut out = String::new();
    for (i, idx) in indices.iter().enumerate() {
        if i > 0 {
            out.push(';');
        }
        let _ = write!(out, "{idx}");
    }
    out
}
