//! `cyclochow`: run one verification command and emit a JSON report.
//!
//! Settings resolve as flag > CYCLOCHOW_* environment variable > config file > default.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::Parser;
use serde::Deserialize;

use cyclochow::numerics::QuadSpec;
use cyclochow::params::valid_a;
use cyclochow::report::Status;
use cyclochow::{Command, Report, RunConfig};

const COMMANDS: &str = "validate, verify-cocycles, verify-chi-power, verify-v-transform, \
verify-operator-conjugation, verify-certificate, verify-onedim, verify-divisors, \
verify-pf-numeric, verify-2f1, rank-polelemma, rank-delta, rank-full, report-all";

#[derive(Parser, Debug)]
#[command(name = "cyclochow", version, about = "Exact and numerical checks for higher Chow cycles on cyclic-cover surfaces")]
#[command(after_help = format!("Commands: {COMMANDS}\n\nExit status: 0 if every check passes, 1 if any check fails or is refused, 2 on configuration errors."))]
struct Cli {
    /// Which check suite to run
    #[arg(value_parser = |s: &str| s.parse::<Command>().map_err(|e| e.to_string()))]
    command: Command,
    #[arg(long = "N", env = "CYCLOCHOW_N")]
    n: Option<u32>,
    #[arg(long = "A", env = "CYCLOCHOW_A")]
    a: Option<u32>,
    /// Exact rational p/q or decimal literal in (0, 1)
    #[arg(long, env = "CYCLOCHOW_LAMBDA1")]
    lambda1: Option<String>,
    #[arg(long, env = "CYCLOCHOW_LAMBDA2")]
    lambda2: Option<String>,
    /// Working precision in decimal digits
    #[arg(long, env = "CYCLOCHOW_PRECISION")]
    precision: Option<u32>,
    /// Quadrature convergence tolerance
    #[arg(long, env = "CYCLOCHOW_TOLERANCE")]
    tolerance: Option<f64>,
    /// Maximum tanh-sinh refinement level
    #[arg(long, env = "CYCLOCHOW_MAX_LEVEL")]
    max_level: Option<u32>,
    /// Tolerance for numeric residuals against closed forms
    #[arg(long, env = "CYCLOCHOW_CHECK_TOLERANCE")]
    check_tolerance: Option<f64>,
    #[arg(long, env = "CYCLOCHOW_SEED")]
    seed: Option<u64>,
    /// Random group-element pairs for the cocycle checks
    #[arg(long, env = "CYCLOCHOW_RANDOM_PAIRS")]
    random_pairs: Option<usize>,
    /// Write the JSON report here ('-' for stdout)
    #[arg(long, env = "CYCLOCHOW_JSON")]
    json: Option<PathBuf>,
    /// Worker threads (default: all cores)
    #[arg(long, env = "CYCLOCHOW_JOBS")]
    jobs: Option<usize>,
    /// TOML file with defaults for any of the settings above
    #[arg(long, env = "CYCLOCHOW_CONFIG")]
    config: Option<PathBuf>,
    /// Zero elapsed_ms so reports are byte-for-byte reproducible
    #[arg(long, env = "CYCLOCHOW_NO_TIMINGS")]
    no_timings: bool,
    /// No per-check summary
    #[arg(long, short)]
    quiet: bool,
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    #[serde(rename = "N")]
    n: Option<u32>,
    #[serde(rename = "A")]
    a: Option<u32>,
    lambda1: Option<String>,
    lambda2: Option<String>,
    precision: Option<u32>,
    tolerance: Option<f64>,
    max_level: Option<u32>,
    check_tolerance: Option<f64>,
    seed: Option<u64>,
    random_pairs: Option<usize>,
    jobs: Option<usize>,
}

fn load_config(path: &Path) -> anyhow::Result<FileConfig> {
    let text = fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
}

fn resolve(cli: &Cli) -> anyhow::Result<(RunConfig, Option<usize>)> {
    let file = match &cli.config {
        Some(p) => load_config(p)?,
        None => FileConfig::default(),
    };
    let d = RunConfig::default();
    let qd = QuadSpec::default();
    let spec = QuadSpec::new(
        cli.tolerance.or(file.tolerance).unwrap_or(qd.tolerance),
        cli.max_level.or(file.max_level).unwrap_or(qd.max_level),
        cli.precision.or(file.precision).unwrap_or(qd.digits),
    )?;
    let cfg = RunConfig {
        n: cli.n.or(file.n).unwrap_or(d.n),
        a: cli.a.or(file.a).unwrap_or(d.a),
        lambda1: cli.lambda1.clone().or(file.lambda1).unwrap_or(d.lambda1),
        lambda2: cli.lambda2.clone().or(file.lambda2).unwrap_or(d.lambda2),
        spec,
        seed: cli.seed.or(file.seed).unwrap_or(d.seed),
        random_pairs: cli.random_pairs.or(file.random_pairs).unwrap_or(d.random_pairs),
        check_tolerance: cli.check_tolerance.or(file.check_tolerance).unwrap_or(d.check_tolerance),
    };
    if cfg.n < 2 {
        bail!("N must be at least 2, got {}", cfg.n);
    }
    Ok((cfg, cli.jobs.or(file.jobs)))
}

fn summary(report: &Report, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(
        out,
        "{} N={} A={} lambda1={} lambda2={}",
        report.command, report.params.n, report.params.a, report.params.lambda1, report.params.lambda2
    )?;
    for c in &report.checks {
        let tag = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Refused => "REFUSED",
            Status::Error => "ERROR",
        };
        let detail = match (c.residual, c.tolerance) {
            (Some(r), Some(t)) => format!("residual {r:.3e} (tol {t:.0e})"),
            (None, Some(t)) => format!("residual n/a (tol {t:.0e})"),
            _ => format!("value {}", c.value),
        };
        writeln!(out, "  {tag:<7} {}: {detail}", c.name)?;
    }
    let bad = report.failures().count();
    writeln!(out, "{} of {} checks passed", report.checks.len() - bad, report.checks.len())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cfg, jobs) = match resolve(&cli) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    if let Some(j) = jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("warning: could not size the worker pool: {e}");
        }
    }
    if cli.command == Command::Validate && !cli.quiet {
        eprintln!("valid A for N={}: {:?}", cfg.n, valid_a(cfg.n));
    }

    let mut report = cyclochow::suite::run(cli.command, &cfg);
    if cli.no_timings {
        report = report.without_timings();
    }

    let to_stdout = cli.json.as_deref() == Some(Path::new("-"));
    if !cli.quiet {
        let res = if to_stdout {
            summary(&report, &mut std::io::stderr())
        } else {
            summary(&report, &mut std::io::stdout())
        };
        if let Err(e) = res {
            eprintln!("error: {e}");
        }
    }
    if let Some(path) = &cli.json {
        let mut text = report.to_json();
        text.push('\n');
        let written = if to_stdout {
            std::io::stdout().write_all(text.as_bytes())
        } else {
            fs::write(path, text)
        };
        if let Err(e) = written {
            eprintln!("error: writing {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(report.exit_code() as u8)
}
