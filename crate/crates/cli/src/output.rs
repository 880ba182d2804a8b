use std::fs;
use std::path::{Path, PathBuf};

use serde_json::Value;
use splitprob_core::Error;

use crate::config::Format;

/// Environment variable naming the default directory for written files.
pub const OUT_DIR_VAR: &str = "SPLITPROB_OUT_DIR";

/// A command result in every supported format.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub text: String,
    pub json: Value,
    /// `None` means: derive `key,value` rows from the JSON scalars.
    pub csv: Option<String>,
    /// False when a check the command ran did not pass.
    pub passed: bool,
}

impl Output {
    pub fn new(text: String, json: Value) -> Self {
        Output { text, json, csv: None, passed: true }
    }

    pub fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    pub fn with_passed(mut self, passed: bool) -> Self {
        self.passed = passed;
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => ensure_newline(self.text.clone()),
            Format::Json => ensure_newline(serde_json::to_string_pretty(&self.json).expect("serializable")),
            Format::Csv => match &self.csv {
                Some(c) => ensure_newline(c.clone()),
                None => scalar_csv(&self.json),
            },
        }
    }
}

fn ensure_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn scalar_csv(json: &Value) -> String {
    let mut out = String::from("key,value\n");
    if let Value::Object(map) = json {
        for (k, v) in map {
            let cell = match v {
                Value::String(s) => s.clone(),
                Value::Number(n) => n.to_string(),
                Value::Bool(b) => b.to_string(),
                Value::Null => String::new(),
                _ => continue,
            };
            out.push_str(&format!("{k},{cell}\n"));
        }
    }
    out
}

/// Failure classes with their exit codes.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Bad arguments: exit 2.
    Usage(String),
    /// A configured capacity limit was hit: exit 3.
    Limit(String),
    /// The computation itself failed: exit 1.
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Limit(_) => 3,
            CliError::Failed(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Limit(m) | CliError::Failed(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        if e.is_limit() {
            return CliError::Limit(msg);
        }
        match e {
            Error::InvalidParameter(_) | Error::NonMonic | Error::NotSplitModP { .. } | Error::OrderMismatch { .. } => {
                CliError::Usage(msg)
            }
            _ => CliError::Failed(msg),
        }
    }
}

/// Directory for written files: `$SPLITPROB_OUT_DIR`, else the current one.
pub fn out_dir() -> PathBuf {
    std::env::var_os(OUT_DIR_VAR).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("."))
}

/// Resolves a user-supplied output path against [`out_dir`].
pub fn resolve(path: &Path) -> PathBuf {
    if path.is_absolute() { path.to_path_buf() } else { out_dir().join(path) }
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).map_err(|e| CliError::Failed(format!("{}: {e}", parent.display())))?;
        }
    }
    fs::write(path, contents).map_err(|e| CliError::Failed(format!("{}: {e}", path.display())))
}
