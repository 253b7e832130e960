use std::io::Read;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use subdiv_core::planar::{parse_embedding, PlanarEmbedding};
use subdiv_core::{parse_edge_list, Error, Graph, VertexSet};

use crate::args::Format;

pub const EXIT_FOUND: u8 = 0;
pub const EXIT_ABSENT: u8 = 1;
pub const EXIT_BUDGET: u8 = 2;
pub const EXIT_INPUT: u8 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError { code: EXIT_INPUT, message: message.into() }
    }
}

/// Library errors mapped onto exit codes. Exhausted caps and retries are
/// budget outcomes; everything else is bad input.
pub fn lib_error(context: &str, e: Error) -> CliError {
    let code = match e {
        Error::CapExceeded { .. } | Error::RetriesExhausted { .. } => EXIT_BUDGET,
        _ => EXIT_INPUT,
    };
    CliError { code, message: format!("{context}: {e}") }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// Found, constructed or verified.
    Found,
    /// Proven absent or a checked failure.
    Absent,
    /// Budget or timeout; nothing is proven.
    Timeout,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Found => EXIT_FOUND,
            Status::Absent => EXIT_ABSENT,
            Status::Timeout => EXIT_BUDGET,
        }
    }
}

pub struct Report {
    pub schema: &'static str,
    pub status: Status,
    pub result: Value,
    pub text: String,
    pub dot: Option<String>,
    pub default_format: Format,
}

impl Report {
    pub fn new(schema: &'static str, status: Status, result: impl Serialize, text: String) -> Self {
        Report {
            schema,
            status,
            result: serde_json::to_value(result).expect("serialisable result"),
            text,
            dot: None,
            default_format: Format::Json,
        }
    }

    pub fn with_dot(mut self, dot: String) -> Self {
        self.dot = Some(dot);
        self
    }

    pub fn render(&self, format: Option<Format>) -> Result<String, CliError> {
        match format.unwrap_or(self.default_format) {
            Format::Json => {
                let env = json!({ "schema": self.schema, "status": self.status, "result": self.result });
                Ok(serde_json::to_string_pretty(&env).expect("json") + "\n")
            }
            Format::Text => Ok(self.text.clone()),
            Format::Dot => self.dot.clone().ok_or_else(|| CliError::input(format!("no DOT rendering for {}", self.schema))),
        }
    }
}

/// Every input read during a run, with content hashes for the manifest.
#[derive(Default)]
pub struct Inputs {
    pub read: Vec<(String, String)>,
    stdin: Option<String>,
}

pub fn sha256(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

impl Inputs {
    pub fn text(&mut self, path: Option<&Path>) -> Result<(String, String), CliError> {
        let (name, text) = match path {
            Some(p) if p != Path::new("-") => {
                let text = std::fs::read_to_string(p).map_err(|e| CliError::input(format!("{}: {e}", p.display())))?;
                (p.display().to_string(), text)
            }
            _ => {
                if self.stdin.is_none() {
                    let mut s = String::new();
                    std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::input(format!("<stdin>: {e}")))?;
                    self.stdin = Some(s);
                }
                ("<stdin>".to_string(), self.stdin.clone().unwrap())
            }
        };
        if !self.read.iter().any(|(n, _)| *n == name) {
            self.read.push((name.clone(), sha256(text.as_bytes())));
        }
        Ok((name, text))
    }

    pub fn graph(&mut self, path: &Option<PathBuf>) -> Result<Graph, CliError> {
        let (name, text) = self.text(path.as_deref())?;
        parse_edge_list(&text).map_err(|e| located(&name, e))
    }

    pub fn embedding(&mut self, path: &Option<PathBuf>) -> Result<PlanarEmbedding, CliError> {
        let (name, text) = self.text(path.as_deref())?;
        parse_embedding(&text).map_err(|e| located(&name, e))
    }

    pub fn json<T: serde::de::DeserializeOwned>(&mut self, path: &Path) -> Result<T, CliError> {
        let (name, text) = self.text(Some(path))?;
        serde_json::from_str(&text).map_err(|e| CliError::input(format!("{name}:{}: {e}", e.line())))
    }
}

fn located(name: &str, e: Error) -> CliError {
    match e {
        Error::Parse { line, msg } => CliError::input(format!("{name}:{line}: {msg}")),
        other => CliError::input(format!("{name}: {other}")),
    }
}

pub fn vertex_set(g: &Graph, vs: &[usize], what: &str) -> Result<VertexSet, CliError> {
    if let Some(&v) = vs.iter().find(|&&v| v >= g.n()) {
        return Err(CliError::input(format!("--{what}: vertex {v} out of range for {} vertices", g.n())));
    }
    Ok(vs.iter().copied().collect())
}

pub fn list(vs: impl IntoIterator<Item = usize>) -> String {
    vs.into_iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}
