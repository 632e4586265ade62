use std::fmt;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

use crate::Format;

#[derive(Debug)]
pub enum CliError {
    Lib(plancherel_lab::Error),
    Usage(String),
    Io(io::Error),
}

impl CliError {
    /// 2 for an exceeded resource cap, 1 for everything else.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(e) if e.is_resource_limit() => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Io(e) => write!(f, "i/o: {e}"),
        }
    }
}

impl From<plancherel_lab::Error> for CliError {
    fn from(e: plancherel_lab::Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Usage(format!("json: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Usage(format!("csv: {e}"))
    }
}

/// A result rendered as JSON and, for tabular commands, CSV.
pub struct Artifact {
    pub json: String,
    pub csv: Option<String>,
}

impl Artifact {
    pub fn json<T: Serialize>(value: &T) -> Result<Self, CliError> {
        let mut json = serde_json::to_string_pretty(value)?;
        json.push('\n');
        Ok(Artifact { json, csv: None })
    }

    pub fn with_csv<R: Serialize>(mut self, header: &[&str], rows: impl IntoIterator<Item = R>) -> Result<Self, CliError> {
        self.csv = Some(csv_text(header, rows)?);
        Ok(self)
    }

    pub fn render(&self, format: Format, command: &str) -> Result<&str, CliError> {
        match format {
            Format::Json => Ok(&self.json),
            Format::Csv => self
                .csv
                .as_deref()
                .ok_or_else(|| CliError::Usage(format!("{command} has no csv output; use --format json"))),
        }
    }
}

pub fn csv_text<R: Serialize>(header: &[&str], rows: impl IntoIterator<Item = R>) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Usage(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| CliError::Usage(format!("csv: {e}")))
}

/// Writes to `path` through a temporary file in the same directory and a
/// rename, or to stdout when no path is given.
pub fn emit(text: &str, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(text.as_bytes())?;
            tmp.as_file().sync_all()?;
            tmp.persist(path).map_err(|e| CliError::Io(e.error))?;
        }
    }
    Ok(())
}
