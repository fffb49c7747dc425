use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};

use triality_cli::{class3, hexagon, validate_class3, validate_hexagon, Format, Mode, Run, TripleSel, UsageError, ALLOW_LARGE_ENV};

/// Hexagon and class III triality geometries over small finite fields.
#[derive(Parser, Debug)]
#[command(name = "triality", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Points and lines of the parabolic quadric with the hexagon checks.
    Hexagon {
        #[arg(long)]
        q: u32,
        #[arg(long, value_enum, default_value = "moving")]
        mode: Mode,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Admissible triples and the graphs of their absolute geometries.
    Class3 {
        #[arg(long)]
        q: u32,
        /// Class index or `all`.
        #[arg(long, default_value = "all")]
        triple: TripleSel,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(clap::Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "summary")]
    format: Format,
    /// Write the artifact here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Allow the slow large-q runs (also set by TRIALITY_ALLOW_LARGE=1).
    #[arg(long)]
    allow_large: bool,
}

fn allow_large(flag: bool) -> bool {
    flag || std::env::var(ALLOW_LARGE_ENV).is_ok_and(|v| !v.is_empty() && v != "0")
}

fn execute(cli: Cli) -> anyhow::Result<(Run, OutputArgs)> {
    match cli.command {
        Command::Hexagon { q, mode, out } => {
            validate_hexagon(q, allow_large(out.allow_large))?;
            Ok((hexagon(q, mode, out.format)?, out))
        }
        Command::Class3 { q, triple, out } => {
            validate_class3(q, allow_large(out.allow_large))?;
            Ok((class3(q, triple, out.format)?, out))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (run, out) = match execute(cli) {
        Ok(r) => r,
        Err(e) if e.is::<UsageError>() => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    };
    let written = match &out.output {
        Some(path) => std::fs::write(path, &run.artifact).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{}", run.artifact);
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(1);
    }
    for w in &run.warnings {
        eprintln!("warning: {w}");
    }
    for c in run.checks.iter().filter(|c| !c.passed) {
        eprintln!("check {} failed: {}", c.name, c.detail);
    }
    ExitCode::from(run.exit_code() as u8)
}
