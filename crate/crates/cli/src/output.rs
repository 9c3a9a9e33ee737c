//! Primary output goes to `--output` or stdout; diagnostics go to stderr.

use std::fs;
use std::io::Write;

use crate::{Format, RunOptions};

pub type CliResult<T> = Result<T, Box<dyn std::error::Error>>;

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass = 0,
    Fail = 1,
    Resource = 2,
}

impl Outcome {
    pub fn from_pass(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

pub fn write_primary(run: &RunOptions, text: &str) -> CliResult<()> {
    match &run.output {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

/// The requested format, or `default` when none was given; errors on formats
/// the command does not produce.
pub fn pick(run: &RunOptions, default: Format, allowed: &[Format], what: &str) -> CliResult<Format> {
    let f = run.format.unwrap_or(default);
    if !allowed.contains(&f) {
        let names: Vec<&str> = allowed.iter().map(|f| name(*f)).collect();
        return Err(format!("{what} supports --format {}", names.join("|")).into());
    }
    Ok(f)
}

pub fn name(f: Format) -> &'static str {
    match f {
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Dot => "dot",
        Format::Table => "table",
    }
}

pub fn json_line(v: &serde_json::Value) -> CliResult<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        let s: Vec<String> = cells.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
        s.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.iter().map(|h| h.to_string()).collect());
    for r in rows {
        out.push_str(&line(r.clone()));
    }
    out
}

pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let field = |s: &str| {
        if s.contains([',', '"', '\n']) {
            format!("\"{}\"", s.replace('"', "\"\""))
        } else {
            s.to_string()
        }
    };
    let mut out = header.join(",") + "\n";
    for r in rows {
        out.push_str(&r.iter().map(|c| field(c)).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    out
}
