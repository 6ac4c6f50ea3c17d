use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use sysmod::datastore::check_store;
use sysmod::modelio::{dump_snapshot, load_model, parse_script, run_script, ScriptRun};

#[derive(Parser)]
#[command(name = "sysmod", version, about = "Check structural object models and run store scripts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and declare a model, then check the initial store.
    Check {
        model: PathBuf,
        #[arg(long)]
        strict_inheritance: bool,
    },
    /// Run a script against a model and print the transcript.
    Run {
        model: PathBuf,
        script: PathBuf,
        /// Also write transcript, failure and final snapshot as JSON.
        #[arg(long, value_name = "OUT")]
        json: Option<PathBuf>,
        #[arg(long)]
        strict_inheritance: bool,
        /// Seed for randomized commands. Scripts currently have none.
        #[arg(long, value_name = "N")]
        seed: Option<u64>,
    },
    /// Run a script, then print the final snapshot.
    Dump {
        model: PathBuf,
        script: PathBuf,
        #[arg(long)]
        strict_inheritance: bool,
    },
}

const USAGE: u8 = 2;

fn read(path: &Path) -> Result<String, ExitCode> {
    match std::fs::read(path) {
        Ok(bytes) => Ok(String::from_utf8_lossy(&bytes).into_owned()),
        Err(e) => {
            eprintln!("sysmod: cannot read {}: {e}", path.display());
            Err(ExitCode::from(USAGE))
        }
    }
}

fn execute(model: &Path, script: &Path, strict: bool) -> Result<ScriptRun, ExitCode> {
    let model_src = read(model)?;
    let script_src = read(script)?;
    let (world, store) = load_model(&model_src, strict).map_err(|e| {
        eprintln!("{}: {e}", model.display());
        ExitCode::FAILURE
    })?;
    let stmts = parse_script(&script_src).map_err(|e| {
        eprintln!("{}: syntax error at {e}", script.display());
        ExitCode::FAILURE
    })?;
    Ok(run_script(world, store, &stmts))
}

fn status(run: &ScriptRun) -> ExitCode {
    if run.succeeded() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check {
            model,
            strict_inheritance,
        } => read(&model).map(|src| match load_model(&src, strict_inheritance) {
            Ok((world, store)) => {
                let report = check_store(&world, &store);
                println!("{report}");
                if report.is_ok() {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::FAILURE
                }
            }
            Err(e) => {
                eprintln!("{}: {e}", model.display());
                ExitCode::FAILURE
            }
        }),
        Command::Run {
            model,
            script,
            json,
            strict_inheritance,
            seed: _,
        } => execute(&model, &script, strict_inheritance).and_then(|run| {
            for line in &run.transcript {
                println!("{line}");
            }
            if let Some(out) = json {
                let doc = json!({
                    "transcript": run.transcript,
                    "failure": run.failure.as_ref().map(|f| json!({
                        "statement": f.statement,
                        "position": f.pos.to_string(),
                        "message": f.error.to_string(),
                    })),
                    "violations": run.violations,
                    "snapshot": dump_snapshot(&run.world, &run.store).to_json(),
                });
                let text = serde_json::to_string_pretty(&doc).expect("json document serializes");
                if let Err(e) = std::fs::write(&out, text + "\n") {
                    eprintln!("sysmod: cannot write {}: {e}", out.display());
                    return Err(ExitCode::from(USAGE));
                }
            }
            Ok(status(&run))
        }),
        Command::Dump {
            model,
            script,
            strict_inheritance,
        } => execute(&model, &script, strict_inheritance).map(|run| {
            print!("{}", dump_snapshot(&run.world, &run.store).to_text());
            if let Some(f) = &run.failure {
                eprintln!("statement {} at {}: {}", f.statement, f.pos, f.error);
            }
            status(&run)
        }),
    };
    result.unwrap_or_else(|code| code)
}
