use std::collections::BTreeMap;
use std::io::{self, IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use normcg::problems::{problem_by_name, PROBLEM_NAMES};
use normcg::study::{
    run_checks, run_study, write_csv, write_json, write_rows, CheckResult, OutputFormat,
    StudyConfig, StudyError,
};

#[derive(Parser)]
#[command(
    name = "normcg",
    version,
    about = "Norm-preserving cG time stepping studies"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an h-, p- or single-cell convergence study.
    Run(Box<RunArgs>),
    /// List the built-in problems.
    ListProblems,
    /// Check structural and discretisation invariants on a problem.
    Check {
        problem: String,
        #[arg(long, default_value = "f64")]
        precision: String,
    },
}

#[derive(clap::Args)]
struct RunArgs {
    /// Config file with `key = value` lines; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    problem: Option<String>,
    /// h, p or single.
    #[arg(long)]
    mode: Option<String>,
    /// Degrees, e.g. `1,2,3` or `1..16`.
    #[arg(long)]
    degrees: Option<String>,
    /// Step counts M, e.g. `8,16,32`.
    #[arg(long)]
    meshes: Option<String>,
    /// Final time.
    #[arg(long = "T")]
    t_end: Option<f64>,
    /// Fixed step length for the p-study.
    #[arg(long)]
    k: Option<f64>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or json.
    #[arg(long)]
    format: Option<String>,
    /// f64 or f32.
    #[arg(long)]
    precision: Option<String>,
    /// picard, direct or auto.
    #[arg(long)]
    method: Option<String>,
    /// error, warn or ignore.
    #[arg(long)]
    contraction_policy: Option<String>,
    /// Run cells in parallel.
    #[arg(long)]
    parallel: bool,
    /// Write 0 in the wall_time column (byte-reproducible output).
    #[arg(long)]
    no_wall_time: bool,
}

impl RunArgs {
    fn config(&self) -> Result<StudyConfig, StudyError> {
        let mut entries = match &self.config {
            Some(path) => StudyConfig::parse_entries(&std::fs::read_to_string(path)?)?,
            None => BTreeMap::new(),
        };
        let mut set = |key: &str, value: Option<String>| {
            if let Some(v) = value {
                entries.insert(key.to_string(), v);
            }
        };
        set("problem", self.problem.clone());
        set("mode", self.mode.clone());
        set("degrees", self.degrees.clone());
        set("meshes", self.meshes.clone());
        set("T", self.t_end.map(|t| t.to_string()));
        set("k", self.k.map(|k| k.to_string()));
        set("out", self.out.as_ref().map(|p| p.display().to_string()));
        set("format", self.format.clone());
        set("precision", self.precision.clone());
        set("method", self.method.clone());
        set("contraction_policy", self.contraction_policy.clone());
        if self.parallel {
            set("parallel", Some("true".into()));
        }
        if self.no_wall_time {
            set("wall_time", Some("false".into()));
        }
        StudyConfig::from_entries(entries)
    }
}

fn use_color() -> bool {
    std::env::var_os("NO_COLOR").is_none() && io::stderr().is_terminal()
}

fn run(args: &RunArgs) -> ExitCode {
    let config = match args.config() {
        Ok(c) => c,
        Err(e @ (StudyError::Config(_) | StudyError::Io(_))) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let rows = match run_study(&config) {
        Ok(rows) => rows,
        Err(StudyError::Config(msg)) => {
            eprintln!("error: config error: {msg}");
            return ExitCode::from(2);
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let written = match &config.output_path {
        Some(path) => write_rows(&rows, config.output_format, path),
        None => {
            let stdout = io::stdout().lock();
            match config.output_format {
                OutputFormat::Csv => write_csv(&rows, stdout).map_err(StudyError::from),
                OutputFormat::Json => write_json(&rows, stdout),
            }
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    let failed: Vec<_> = rows.iter().filter(|r| !r.is_ok()).collect();
    for row in &failed {
        eprintln!(
            "r = {}, M = {}: {}",
            row.r,
            row.m,
            row.error.as_deref().unwrap_or_default()
        );
    }
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn report(results: &[CheckResult]) -> bool {
    let color = use_color();
    let mut err = io::stderr().lock();
    for r in results {
        let tag = match (r.passed, color) {
            (true, true) => "\x1b[32mPASS\x1b[0m",
            (false, true) => "\x1b[31mFAIL\x1b[0m",
            (true, false) => "PASS",
            (false, false) => "FAIL",
        };
        let _ = writeln!(err, "{tag}  {}: {}", r.name, r.detail);
    }
    results.iter().all(|r| r.passed)
}

fn check(problem: &str, precision: &str) -> ExitCode {
    let results = match precision {
        "f64" => problem_by_name::<f64>(problem).and_then(|p| run_checks(&p)),
        "f32" => problem_by_name::<f32>(problem).and_then(|p| run_checks(&p)),
        other => {
            eprintln!("error: unknown precision `{other}`");
            return ExitCode::from(2);
        }
    };
    match results {
        Ok(results) if report(&results) => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(normcg::Error::UnknownProblem(name)) => {
            eprintln!("error: unknown problem `{name}`");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run(args) => run(&args),
        Command::ListProblems => {
            let about = |name: &str| match name {
                "paper3x3" => {
                    "3x3 skew-symmetric A(t) system, u(0) = (1,0,0), exact solution known"
                }
                "rotation2d" => "u' = (-u2, u1), u(0) = (1,0), exact solution (cos t, sin t)",
                "zero" => "u' = 0 in R^2",
                _ => "",
            };
            for name in PROBLEM_NAMES {
                println!("{name:<12}{}", about(name));
            }
            ExitCode::SUCCESS
        }
        Command::Check { problem, precision } => check(&problem, &precision),
    }
}
