mod args;
mod manifest;
mod run;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::Cli;

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Some(b) = cli.budget {
        std::env::set_var("POLYGRAPH_BUDGET", b.to_string());
    }
    let jobs = cli.jobs.unwrap_or(0);
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
        eprintln!("warning: {e}");
    }

    let outcome = run::execute(&cli);
    if !outcome.text.is_empty() {
        eprint!("{}", outcome.text);
    }
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &outcome.body).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(&outcome.body).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    if let Some(path) = &cli.manifest {
        let m = manifest::RunManifest::new(&argv[1..], &cli, &outcome);
        if let Err(e) = m.write(path) {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    ExitCode::from(outcome.code)
}
