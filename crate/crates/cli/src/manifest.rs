use std::path::Path;
use std::process::Command;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::args::Cli;
use crate::run::{input_error, read_json, rejection, reply, Outcome, Run};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputHash {
    pub path: String,
    pub sha256: String,
}

/// Enough to re-run a command and check that it reproduces its output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub version: String,
    /// argv after the program name, without the manifest flag
    pub command: Vec<String>,
    pub inputs: Vec<InputHash>,
    pub presentation: Option<String>,
    pub parameters: Value,
    pub budget_env: Option<String>,
    pub exit_code: u8,
    pub results: Value,
    pub output_sha256: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn strip_manifest_flag(argv: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in argv {
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

impl RunManifest {
    pub fn new(argv: &[String], cli: &Cli, outcome: &Outcome) -> RunManifest {
        let inputs = cli
            .command
            .input_files()
            .iter()
            .map(|p| InputHash {
                path: p.display().to_string(),
                sha256: std::fs::read(p).map(|b| sha256_hex(&b)).unwrap_or_default(),
            })
            .collect();
        RunManifest {
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: strip_manifest_flag(argv),
            inputs,
            presentation: cli.command.presentation(),
            parameters: serde_json::to_value(cli).unwrap_or(Value::Null),
            budget_env: std::env::var("POLYGRAPH_BUDGET").ok(),
            exit_code: outcome.code,
            results: outcome.summary.clone(),
            output_sha256: sha256_hex(&outcome.body),
        }
    }

    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        std::fs::write(path, crate::run::to_bytes(self))
    }
}

/// Drops `--out` so the replayed output arrives on stdout.
fn strip_out_flag(argv: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in argv {
        if skip {
            skip = false;
        } else if a == "--out" {
            skip = true;
        } else if !a.starts_with("--out=") {
            out.push(a.clone());
        }
    }
    out
}

pub fn replay(path: &Path) -> Run {
    let m: RunManifest = read_json(path)?;
    for input in &m.inputs {
        let actual = std::fs::read(&input.path)
            .map(|b| sha256_hex(&b))
            .map_err(|e| input_error(format!("{}: {e}", input.path)))?;
        if actual != input.sha256 {
            return Err(input_error(format!(
                "input {} changed: recorded {}, now {actual}",
                input.path, input.sha256
            )));
        }
    }
    let exe = std::env::current_exe().map_err(|e| input_error(e.to_string()))?;
    let mut cmd = Command::new(exe);
    cmd.args(strip_out_flag(&m.command));
    match &m.budget_env {
        Some(b) => cmd.env("POLYGRAPH_BUDGET", b),
        None => cmd.env_remove("POLYGRAPH_BUDGET"),
    };
    let run = cmd.output().map_err(|e| input_error(e.to_string()))?;
    let code = run.status.code().unwrap_or(-1);
    let actual = sha256_hex(&run.stdout);
    let report = json!({
        "command": m.command,
        "expected_sha256": m.output_sha256,
        "actual_sha256": actual,
        "expected_exit_code": m.exit_code,
        "actual_exit_code": code,
        "reproduced": actual == m.output_sha256 && code == m.exit_code as i32,
    });
    if actual == m.output_sha256 && code == m.exit_code as i32 {
        reply(&report, format!("reproduced: output sha256 {actual}\n"), json!({ "reproduced": true }))
    } else {
        Err(rejection("replay did not reproduce the recorded output", report))
    }
}
