use std::io::{self, Write};

use branchkit::{Error, ErrorKind};
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

/// Envelope written to stdout under `--format json`.
#[derive(Debug, Serialize)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Vec<String>,
}

/// Exit status of the process.
pub mod exit {
    pub const OK: u8 = 0;
    pub const VERIFICATION_FAILED: u8 = 1;
    pub const INVALID_INPUT: u8 = 2;
    pub const UNSUPPORTED: u8 = 3;
}

/// Successful (or partially failed) command output, renderable in every format.
#[derive(Debug, Default)]
pub struct Output {
    pub payload: Value,
    pub banner: Vec<String>,
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub diagnostics: Vec<String>,
    /// Set when the command ran but its checks failed.
    pub failure: Option<Failure>,
}

#[derive(Debug, Clone)]
pub struct Failure {
    pub code: &'static str,
    pub message: String,
}

#[derive(Debug)]
pub struct CliError {
    pub code: String,
    pub message: String,
    pub hint: Option<String>,
    pub exit: u8,
}

impl CliError {
    pub fn invalid(code: &str, message: impl Into<String>) -> Self {
        CliError {
            code: code.to_string(),
            message: message.into(),
            hint: None,
            exit: exit::INVALID_INPUT,
        }
    }

    pub fn with_hint(mut self, hint: impl Into<String>) -> Self {
        self.hint = Some(hint.into());
        self
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let exit = match e.kind() {
            ErrorKind::InvalidInput => exit::INVALID_INPUT,
            ErrorKind::Unsupported | ErrorKind::Numerical => exit::UNSUPPORTED,
        };
        CliError {
            code: e.code().to_string(),
            message: e.to_string(),
            hint: None,
            exit,
        }
    }
}

pub fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

/// Compact float rendering shared by the csv and table formats.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x != 0.0 && (x.abs() < 1e-4 || x.abs() >= 1e6) {
        format!("{x:.6e}")
    } else {
        format!("{x}")
    }
}

pub fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

pub fn emit(result: std::result::Result<Output, CliError>, format: Format) -> u8 {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = match result {
        Ok(o) => {
            let code = if o.failure.is_some() {
                exit::VERIFICATION_FAILED
            } else {
                exit::OK
            };
            let written = match format {
                Format::Json => write_json(&mut out, envelope(o)),
                Format::Csv => write_csv(&mut out, &o),
                Format::Table => write_table(&mut out, &o),
            };
            if let Err(e) = written.or_else(ignore_broken_pipe) {
                eprintln!("error: cannot write output: {e}");
            }
            code
        }
        Err(e) => {
            if format == Format::Json {
                let mut payload = serde_json::json!({ "code": e.code, "message": e.message });
                if let Some(h) = &e.hint {
                    payload["hint"] = Value::String(h.clone());
                }
                let res = CommandResult {
                    status: Status::Error,
                    payload,
                    diagnostics: Vec::new(),
                };
                let _ = write_json(&mut out, res);
            } else {
                eprintln!("error[{}]: {}", e.code, e.message);
                if let Some(h) = &e.hint {
                    eprintln!("hint: {h}");
                }
            }
            e.exit
        }
    };
    let _ = out.flush();
    code
}

fn ignore_broken_pipe(e: io::Error) -> io::Result<()> {
    match e.kind() {
        io::ErrorKind::BrokenPipe => Ok(()),
        _ => Err(e),
    }
}

fn envelope(o: Output) -> CommandResult {
    match o.failure {
        None => CommandResult {
            status: Status::Ok,
            payload: o.payload,
            diagnostics: o.diagnostics,
        },
        Some(f) => {
            let mut payload = serde_json::json!({ "code": f.code, "message": f.message });
            payload["result"] = o.payload;
            CommandResult {
                status: Status::Error,
                payload,
                diagnostics: o.diagnostics,
            }
        }
    }
}

fn write_json(out: &mut impl Write, res: CommandResult) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, &res)?;
    writeln!(out)
}

fn write_csv(out: &mut impl Write, o: &Output) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(&mut *out);
    w.write_record(&o.headers)?;
    for row in &o.rows {
        w.write_record(row)?;
    }
    w.flush()?;
    drop(w);
    for d in &o.diagnostics {
        eprintln!("note: {d}");
    }
    if let Some(f) = &o.failure {
        eprintln!("error[{}]: {}", f.code, f.message);
    }
    Ok(())
}

fn write_table(out: &mut impl Write, o: &Output) -> io::Result<()> {
    for line in &o.banner {
        writeln!(out, "{line}")?;
    }
    if !o.headers.is_empty() {
        if !o.banner.is_empty() {
            writeln!(out)?;
        }
        let mut widths: Vec<usize> = o.headers.iter().map(|h| h.len()).collect();
        for row in &o.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
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
        writeln!(out, "{}", line(o.headers.clone()))?;
        let rules: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        writeln!(out, "{}", line(rules.iter().map(String::as_str).collect()))?;
        for row in &o.rows {
            writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
        }
        if o.rows.is_empty() {
            writeln!(out, "(no rows)")?;
        }
    }
    for d in &o.diagnostics {
        writeln!(out, "note: {d}")?;
    }
    if let Some(f) = &o.failure {
        writeln!(out, "FAILED [{}]: {}", f.code, f.message)?;
    }
    Ok(())
}
