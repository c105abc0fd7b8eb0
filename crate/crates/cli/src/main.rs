mod report;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use coxkit::group::{catalog_names, DEFAULT_CAP};
use coxkit::{Error, Group, GroupSpec};

use report::{render, Format, Report};
use suites::{Context, Suite};

/// Exact computations with finite complex reflection groups.
#[derive(Debug, Parser)]
#[command(name = "coxkit", version)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest group order to enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Enumerate a group and print its invariants.
    Info { group: String },
    /// Run verification suites.
    Verify {
        group: String,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Export the noncrossing partition lattices of the Coxeter classes.
    Nc {
        group: String,
        /// Position among the Coxeter classes (default: all).
        class: Option<usize>,
    },
    /// List the named groups.
    Catalog,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::CapExceeded(_) => 3,
        Error::Usage(_) | Error::Parse(_) | Error::Io(_) | Error::Json(_) => 2,
        _ => 1,
    }
}

fn load(spec: &str, cap: usize) -> Result<Context, Error> {
    let spec: GroupSpec = spec.parse()?;
    Context::new(Group::from_spec(&spec, cap)?)
}

fn execute(cli: &Cli) -> Result<Option<Report>, Error> {
    let start = Instant::now();
    let mut report = match &cli.command {
        Command::Catalog => {
            for name in catalog_names() {
                println!("{name}");
            }
            println!("G(m,p,n)");
            return Ok(None);
        }
        Command::Info { group } => {
            let ctx = load(group, cli.cap)?;
            Report {
                command: "info",
                group: group.clone(),
                invariants: ctx.invariants(),
                suite: None,
                checks: Vec::new(),
                posets: Vec::new(),
                isomorphisms: Vec::new(),
                passed: true,
                timing_ms: None,
            }
        }
        Command::Verify { group, suite } => {
            let ctx = load(group, cli.cap)?;
            let checks = suites::run(&ctx, *suite)?;
            Report {
                command: "verify",
                group: group.clone(),
                invariants: ctx.invariants(),
                suite: Some(suite.name().to_string()),
                checks,
                posets: Vec::new(),
                isomorphisms: Vec::new(),
                passed: true,
                timing_ms: None,
            }
        }
        Command::Nc { group, class } => {
            let ctx = load(group, cli.cap)?;
            let (posets, isomorphisms) = suites::nc_export(&ctx, *class)?;
            Report {
                command: "nc",
                group: group.clone(),
                invariants: ctx.invariants(),
                suite: None,
                checks: Vec::new(),
                posets,
                isomorphisms,
                passed: true,
                timing_ms: None,
            }
        }
    };
    report.passed = report.failures() == 0;
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_millis());
    }
    Ok(Some(report))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let report = match execute(&cli) {
        Ok(Some(r)) => r,
        Ok(None) => return ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let text = render(&report, cli.format);
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
