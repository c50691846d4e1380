use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use ambiskew::gallery;
use ambiskew::report::Report;
use ambiskew::session::ExecOptions;
use ambiskew::Error;
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "ambiskew", version, about = "Ambiskew extensions of Hopf-Galois algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Args, Clone)]
struct Flags {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Degree bound of randomized property scans.
    #[arg(long, global = true, default_value_t = 3)]
    degree_bound: u32,
    /// Seed of randomized property scans.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Directory of `.ses` gallery files replacing the built-in cases.
    #[arg(long, global = true)]
    fixtures: Option<PathBuf>,
    /// Specialize a parameter, e.g. `--set q=1`.
    #[arg(long = "set", global = true, value_name = "NAME=VALUE")]
    set: Vec<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run every statement of a session file.
    Check { file: PathBuf },
    /// Run a session file and print the presentations it builds.
    Build { file: PathBuf },
    /// Run a session file that derives Hopf algebras and print their data.
    DeriveHopf { file: PathBuf },
    /// Run one gallery case, or all of them.
    Gallery {
        name: Option<String>,
        #[arg(long)]
        all: bool,
    },
}

fn options(command: &str, f: &Flags) -> Result<ExecOptions, String> {
    let mut specialize = Vec::new();
    for s in &f.set {
        let (k, v) = s.split_once('=').ok_or_else(|| format!("--set expects NAME=VALUE, got `{s}`"))?;
        specialize.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(ExecOptions { command: command.into(), seed: f.seed, bound: f.degree_bound, specialize, ..Default::default() })
}

fn emit(report: &Report, json: bool) {
    if json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
}

fn error_code(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(if e.is_usage() { 2 } else { 1 })
}

fn verdict_code(passed: bool) -> ExitCode {
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run_file(command: &str, file: &PathBuf, flags: &Flags) -> ExitCode {
    let opts = match options(command, flags) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = match fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {e}", file.display());
            return ExitCode::from(2);
        }
    };
    let session = match ambiskew::session::Session::parse(&text) {
        Ok(s) => s,
        Err(e) => return error_code(&e),
    };
    if command == "derive-hopf" && !session.stmts.iter().any(|s| matches!(s.kind, ambiskew::session::StmtKind::Derive { .. })) {
        eprintln!("error: {} contains no derive statement", file.display());
        return ExitCode::from(2);
    }
    match ambiskew::session::Executor::new(opts).run(&session) {
        Ok(mut report) => {
            let keep = |k: &str| match command {
                "build" => k.ends_with(".presentation"),
                "derive-hopf" => !k.starts_with("scan"),
                _ => true,
            };
            report.derived.retain(|k, _| keep(k));
            emit(&report, flags.json);
            verdict_code(report.passed())
        }
        Err(e) => error_code(&e),
    }
}

fn run_gallery(name: Option<&str>, all: bool, flags: &Flags) -> ExitCode {
    let opts = match options("gallery", flags) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cases = match &flags.fixtures {
        Some(dir) => match gallery::load_dir(dir) {
            Ok(c) => c,
            Err(e) => return error_code(&e),
        },
        None => gallery::registry(),
    };
    match (name, all) {
        (Some(n), false) => {
            let Some(case) = gallery::find(&cases, n) else {
                eprintln!("error: no gallery case `{n}`");
                return ExitCode::from(2);
            };
            match gallery::run_case(case, &opts) {
                Ok(report) => {
                    emit(&report, flags.json);
                    verdict_code(report.passed())
                }
                Err(e) => error_code(&e),
            }
        }
        (None, true) => {
            let summary = gallery::run_all(&cases, &opts);
            if flags.json {
                let reports: Vec<serde_json::Value> = summary
                    .runs
                    .iter()
                    .map(|(n, r)| match r {
                        Ok(rep) => serde_json::to_value(rep).expect("report serializes"),
                        Err(e) => serde_json::json!({ "command": format!("gallery {n}"), "error": e.to_string() }),
                    })
                    .collect();
                println!("{}", serde_json::to_string_pretty(&reports).expect("serializes"));
            } else {
                for l in summary.lines() {
                    println!("{l}");
                }
            }
            verdict_code(summary.passed())
        }
        (None, false) => {
            for c in &cases {
                println!("{:<18} {}", c.name, c.title);
            }
            ExitCode::SUCCESS
        }
        (Some(_), true) => {
            eprintln!("error: give a case name or --all, not both");
            ExitCode::from(2)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.cmd {
        Cmd::Check { file } => run_file("check", file, &cli.flags),
        Cmd::Build { file } => run_file("build", file, &cli.flags),
        Cmd::DeriveHopf { file } => run_file("derive-hopf", file, &cli.flags),
        Cmd::Gallery { name, all } => run_gallery(name.as_deref(), *all, &cli.flags),
    }
}
