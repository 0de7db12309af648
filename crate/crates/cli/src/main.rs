mod args;
mod commands;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, OutputFormat};

/// What a command produced: a verdict, report lines and an optional file.
#[derive(Default)]
pub struct Report {
    pub ok: bool,
    /// Text-mode lines.
    pub lines: Vec<String>,
    /// `key=value` pairs for `--format kv`.
    pub kv: Vec<(String, String)>,
    /// File contents, written to `--out` or standard output.
    pub file: Option<String>,
}

impl Report {
    pub fn new(ok: bool) -> Self {
        Report { ok, ..Default::default() }
    }

    pub fn line(mut self, l: impl Into<String>) -> Self {
        self.lines.push(l.into());
        self
    }

    pub fn kv(mut self, k: &str, v: impl ToString) -> Self {
        self.kv.push((k.to_string(), v.to_string()));
        self
    }

    /// Adds the seed both as a text line and as a field.
    pub fn seed(self, seed: u64) -> Self {
        self.line(format!("seed={seed}")).kv("seed", seed)
    }

    pub fn file(mut self, contents: String) -> Self {
        self.file = Some(contents);
        self
    }
}

fn emit(report: &Report, format: OutputFormat, out: Option<&Path>) -> anyhow::Result<()> {
    let mut stdout = std::io::stdout().lock();
    let rendered: Vec<String> = match format {
        OutputFormat::Text => report.lines.clone(),
        OutputFormat::Kv => report.kv.iter().map(|(k, v)| format!("{k}={v}")).collect(),
    };
    match (&report.file, out) {
        (Some(contents), Some(path)) => {
            std::fs::write(path, contents)
                .map_err(|e| anyhow::anyhow!("cannot write {}: {e}", path.display()))?;
            for l in &rendered {
                writeln!(stdout, "{l}")?;
            }
        }
        (Some(contents), None) => {
            // the report goes to stderr so that stdout stays a valid file
            write!(stdout, "{contents}")?;
            let mut stderr = std::io::stderr().lock();
            for l in &rendered {
                writeln!(stderr, "c {l}")?;
            }
        }
        (None, _) => {
            for l in &rendered {
                writeln!(stdout, "{l}")?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let format = cli.format;
    let result = commands::run(cli.command).and_then(|(report, out)| {
        emit(&report, format, out.as_deref())?;
        Ok(report.ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
