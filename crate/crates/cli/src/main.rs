use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use fockcalc::dsl;
use fockcalc::suite::{self, SuiteConfig, CHECKS};

#[derive(Parser)]
#[command(name = "fockcalc", version, about = "Fock-space kernel calculus checks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run named checks and report residuals.
    #[command(group(ArgGroup::new("which").required(true).args(["check", "all"])))]
    Verify {
        /// Check to run; repeatable.
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(CHECKS))]
        check: Vec<String>,
        /// Run every check.
        #[arg(long)]
        all: bool,
        /// Dimensions, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        n: Vec<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Oracle truncation degree.
        #[arg(long)]
        trunc: Option<usize>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduce an expression file to its kernel normal form.
    Reduce {
        #[arg(long)]
        expr: PathBuf,
    },
}

fn verify(names: Vec<&str>, cfg: SuiteConfig, format: Format, out: Option<PathBuf>) -> Result<bool, String> {
    if !(cfg.tol.is_finite() && cfg.tol > 0.0) {
        return Err(format!("tolerance must be positive, got {}", cfg.tol));
    }
    if let Some(&n) = cfg.ns.iter().find(|&&n| n == 0 || n > 8) {
        return Err(format!("dimension {n} outside 1..=8"));
    }
    let records = suite::run(&names, &cfg).map_err(|e| e.to_string())?;
    let report = match format {
        Format::Json => suite::to_json(&records),
        Format::Text => suite::to_text(&records),
    };
    match out {
        Some(p) => fs::write(&p, report).map_err(|e| format!("{}: {e}", p.display()))?,
        None => print!("{report}"),
    }
    Ok(records.iter().all(|r| r.passed()))
}

fn reduce(path: PathBuf) -> Result<(), String> {
    let text = fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    let x = dsl::parse(&text).map_err(|e| format!("{}:{e}", path.display()))?;
    let k = x.eval().map_err(|e| e.to_string())?;
    println!("{}", dsl::render_kernel(&k));
    println!("{k}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Verify { check, all, n, seed, trunc, tol, format, out } => {
            let names: Vec<&str> = if all { CHECKS.to_vec() } else { check.iter().map(String::as_str).collect() };
            let cfg = SuiteConfig { ns: n, seed, trunc, tol };
            verify(names, cfg, format, out).map(|ok| if ok { 0 } else { 1 })
        }
        Cmd::Reduce { expr } => reduce(expr).map(|()| 0),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
