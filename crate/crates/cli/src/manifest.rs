use std::path::Path;
use std::time::Instant;

use clap::Parser;
use serde::{Deserialize, Serialize};

use crate::args::{Cli, Command, Format};
use crate::io::{sha256, CliError, Inputs, Report, Status};
use crate::run;

pub const MANIFEST_SCHEMA: &str = "subdiv.manifest/1";

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct InputHash {
    pub name: String,
    pub sha256: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ConfigSnapshot {
    pub seed: u64,
    pub budget: Option<u64>,
    pub format: Option<String>,
    pub exhaustive_cap: usize,
    pub threads: usize,
}

/// Everything needed to reproduce a run and check that it did.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RunManifest {
    pub schema: String,
    pub command: Vec<String>,
    pub config: ConfigSnapshot,
    pub inputs: Vec<InputHash>,
    pub seed: u64,
    pub exit_code: u8,
    pub output_sha256: String,
    pub wall_time_ms: f64,
}

pub struct Output {
    pub rendered: String,
    pub code: u8,
}

fn rendered(cli: &Cli, inputs: &mut Inputs) -> Result<Output, CliError> {
    let report = match &cli.command {
        Command::Replay { manifest_file } => replay(manifest_file, inputs)?,
        command => run::dispatch(command, &cli.global, inputs)?,
    };
    Ok(Output { rendered: report.render(cli.global.format)?, code: report.status.code() })
}

/// Runs the command and writes the manifest when asked.
pub fn execute(cli: &Cli, args: &[String]) -> Result<Output, CliError> {
    let start = Instant::now();
    let mut inputs = Inputs::default();
    let result = rendered(cli, &mut inputs);
    if let Some(path) = &cli.global.manifest {
        let (code, hash) = match &result {
            Ok(out) => (out.code, sha256(out.rendered.as_bytes())),
            Err(e) => (e.code, String::new()),
        };
        let g = &cli.global;
        let manifest = RunManifest {
            schema: MANIFEST_SCHEMA.into(),
            command: strip_manifest_flag(args),
            config: ConfigSnapshot {
                seed: g.seed,
                budget: g.budget,
                format: g.format.map(|f| format!("{f:?}").to_lowercase()),
                exhaustive_cap: g.exhaustive_cap,
                threads: g.threads,
            },
            inputs: inputs.read.iter().map(|(name, sha256)| InputHash { name: name.clone(), sha256: sha256.clone() }).collect(),
            seed: g.seed,
            exit_code: code,
            output_sha256: hash,
            wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
        };
        let text = serde_json::to_string_pretty(&manifest).expect("json") + "\n";
        std::fs::write(path, text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    }
    result
}

fn strip_manifest_flag(args: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in args {
        if skip {
            skip = false;
        } else if a == "--manifest" {
            skip = true;
        } else if !a.starts_with("--manifest=") {
            out.push(a.clone());
        }
    }
    out
}

#[derive(Serialize)]
struct ReplayResult {
    identical: bool,
    recorded: String,
    reproduced: String,
    exit_code: u8,
    recorded_exit_code: u8,
}

fn replay(path: &Path, inputs: &mut Inputs) -> Result<Report, CliError> {
    let manifest: RunManifest = inputs.json(path)?;
    if manifest.schema != MANIFEST_SCHEMA {
        return Err(CliError::input(format!("{}: unknown schema {}", path.display(), manifest.schema)));
    }
    for input in &manifest.inputs {
        if input.name == "<stdin>" {
            return Err(CliError::input("runs reading standard input cannot be replayed"));
        }
        let bytes = std::fs::read(&input.name).map_err(|e| CliError::input(format!("{}: {e}", input.name)))?;
        if sha256(&bytes) != input.sha256 {
            return Err(CliError::input(format!("{}: contents changed since the recorded run", input.name)));
        }
    }
    let argv = std::iter::once("subdiv".to_string()).chain(manifest.command.iter().cloned());
    let cli = Cli::try_parse_from(argv).map_err(|e| CliError::input(format!("recorded command: {e}")))?;
    if matches!(cli.command, Command::Replay { .. }) {
        return Err(CliError::input("a replay cannot replay itself"));
    }
    let (reproduced, code) = match rendered(&cli, &mut Inputs::default()) {
        Ok(out) => (sha256(out.rendered.as_bytes()), out.code),
        Err(e) => (String::new(), e.code),
    };
    let identical = reproduced == manifest.output_sha256 && code == manifest.exit_code;
    let text = format!("{}\n", if identical { "identical" } else { "differs" });
    let result = ReplayResult {
        identical,
        recorded: manifest.output_sha256,
        reproduced,
        exit_code: code,
        recorded_exit_code: manifest.exit_code,
    };
    let mut report = Report::new("subdiv.replay/1", if identical { Status::Found } else { Status::Absent }, result, text);
    report.default_format = Format::Json;
    Ok(report)
}
