//! `binomid`: sweep identity families over parameter grids, run the Monte
//! Carlo suite, and gate on the outcome.
//!
//! Exit codes: 0 when every verdict passes, 1 on any fail or unsupported
//! verdict, 2 on a usage or configuration error.

mod grid;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use binomid_core::exact::{canonical, parse_rational, BigRational, MAX_PARTS};
use binomid_core::identities::{parse_tolerance, EngineChoice, FloatConfig, IdentityFamily};
use binomid_core::stochastic::{standard_jobs, RngStream};
use binomid_core::Verdict;

use grid::{jobs_for, Ranges};
use report::{write_csv, write_text, Report, Summary};

const MIN_MC_SAMPLES: usize = 10_000;

#[derive(Parser, Debug)]
#[command(name = "binomid", version, about = "Verify binomial and orthogonal-polynomial identities")]
struct Cli {
    /// Write the JSON report to PATH, or to stdout when PATH is omitted.
    #[arg(long, global = true, env = "BINOMID_JSON", num_args = 0..=1, value_name = "PATH")]
    json: Option<Option<PathBuf>>,

    /// Write verdicts as CSV to PATH.
    #[arg(long, global = true, env = "BINOMID_CSV", value_name = "PATH")]
    csv: Option<PathBuf>,

    /// Big-float working precision in bits.
    #[arg(long, global = true, env = "BINOMID_PRECISION", default_value_t = 256, value_name = "BITS")]
    precision: usize,

    /// Big-float relative tolerance, as a decimal such as 1e-30.
    #[arg(long, global = true, env = "BINOMID_TOL", default_value = "1e-30", value_name = "DECIMAL")]
    tol: String,

    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "BINOMID_JOBS", value_name = "N")]
    jobs: Option<usize>,

    /// Monte Carlo master seed.
    #[arg(long, global = true, env = "BINOMID_SEED", default_value_t = 42, value_name = "U64")]
    seed: u64,

    /// Monte Carlo samples per check.
    #[arg(long, global = true, env = "BINOMID_SAMPLES", default_value_t = 1_000_000, value_name = "N")]
    samples: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run exact, quadratic-field and big-float checks.
    Verify(VerifyArgs),
    /// Run the seeded Monte Carlo suite.
    Mc,
    /// List identity families with their origin and parameters.
    List {
        /// No effect; families are always listed.
        #[arg(long)]
        families: bool,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Family to check (repeatable or comma separated). Default: all.
    #[arg(long = "family", value_delimiter = ',')]
    families: Vec<String>,

    /// Check every family.
    #[arg(long)]
    all: bool,

    /// Largest n on every grid.
    #[arg(long, env = "BINOMID_N_MAX", allow_negative_numbers = true, default_value_t = 8)]
    n_max: i64,

    /// Largest number of parts for the multi-part families.
    #[arg(long, env = "BINOMID_M_MAX", allow_negative_numbers = true, default_value_t = 3)]
    m_max: i64,

    /// Filter periods.
    #[arg(long, env = "BINOMID_P", value_delimiter = ',', default_value = "1,2,3")]
    p: Vec<u64>,

    /// Gamma shapes / Gegenbauer parameters as p/q.
    #[arg(long, env = "BINOMID_A", value_delimiter = ',', default_value = "1/2,1,3/2")]
    a: Vec<String>,

    /// Filter radii as p/q.
    #[arg(long, env = "BINOMID_Z", value_delimiter = ',', default_value = "1,2")]
    z: Vec<String>,

    /// Polynomial arguments as p/q.
    #[arg(long, env = "BINOMID_X", value_delimiter = ',', default_value = "0,2/3,-5/4", allow_hyphen_values = true)]
    x: Vec<String>,

    /// auto, quad or bigfloat; applies to the filter families.
    #[arg(long, env = "BINOMID_ENGINE", default_value = "auto")]
    engine: String,
}

#[derive(Serialize)]
struct VerifyConfig {
    command: &'static str,
    families: Vec<String>,
    n_max: u64,
    m_max: usize,
    p: Vec<u64>,
    a: Vec<String>,
    z: Vec<String>,
    x: Vec<String>,
    engine: String,
    precision: usize,
    tol: String,
    jobs: Option<usize>,
}

#[derive(Serialize)]
struct McConfig {
    command: &'static str,
    seed: u64,
    samples: usize,
    jobs: Option<usize>,
}

#[derive(Serialize)]
struct FamilyEntry {
    name: &'static str,
    anchor: &'static str,
    schema: &'static str,
}

/// Configuration problems map to exit code 2.
#[derive(Debug)]
struct UsageError(anyhow::Error);

fn usage<T>(r: Result<T>) -> std::result::Result<T, UsageError> {
    r.map_err(UsageError)
}

fn rationals(name: &str, raw: &[String], positive: bool) -> Result<Vec<BigRational>> {
    raw.iter()
        .map(|s| {
            let r = parse_rational(s).with_context(|| format!("--{name}: {s:?} is not p/q"))?;
            if positive && !binomid_core::exact::is_positive(&r) {
                bail!("--{name}: {s} must be positive");
            }
            Ok(r)
        })
        .collect()
}

fn float_config(cli: &Cli) -> Result<FloatConfig> {
    let tol = parse_tolerance(&cli.tol).with_context(|| format!("--tol {:?}", cli.tol))?;
    Ok(FloatConfig::new(cli.precision, tol)?)
}

fn thread_pool(jobs: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            bail!("--jobs must be >= 1");
        }
        b = b.num_threads(j);
    }
    Ok(b.build()?)
}

fn verify_plan(cli: &Cli, args: &VerifyArgs) -> Result<(Vec<IdentityFamily>, Ranges, EngineChoice, VerifyConfig)> {
    if args.n_max < 0 {
        bail!("--n-max must be >= 0, got {}", args.n_max);
    }
    if args.m_max < 1 || args.m_max > MAX_PARTS as i64 {
        bail!("--m-max must be in 1..={MAX_PARTS}, got {}", args.m_max);
    }
    if args.p.contains(&0) {
        bail!("--p values must be >= 1");
    }
    let families = if args.all || args.families.is_empty() {
        IdentityFamily::ALL.to_vec()
    } else {
        let mut fs = args
            .families
            .iter()
            .map(|f| f.parse::<IdentityFamily>().map_err(anyhow::Error::from))
            .collect::<Result<Vec<_>>>()?;
        fs.sort();
        fs.dedup();
        fs
    };
    let ranges = Ranges {
        n_max: args.n_max as u64,
        m_max: args.m_max as usize,
        p_set: args.p.clone(),
        a_list: rationals("a", &args.a, true)?,
        z_list: rationals("z", &args.z, true)?,
        x_list: rationals("x", &args.x, false)?,
    };
    let engine: EngineChoice = args.engine.parse()?;
    let canon = |v: &[BigRational]| v.iter().map(canonical).collect::<Vec<_>>();
    let config = VerifyConfig {
        command: "verify",
        families: families.iter().map(|f| f.name().to_string()).collect(),
        n_max: ranges.n_max,
        m_max: ranges.m_max,
        p: ranges.p_set.clone(),
        a: canon(&ranges.a_list),
        z: canon(&ranges.z_list),
        x: canon(&ranges.x_list),
        engine: args.engine.clone(),
        precision: cli.precision,
        tol: cli.tol.clone(),
        jobs: cli.jobs,
    };
    Ok((families, ranges, engine, config))
}

/// Stdout writes ignore a closed pipe (`binomid list | head`).
fn say(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn sort_verdicts(verdicts: &mut [Verdict]) {
    verdicts.sort_by(|a, b| a.report_order(b));
}

fn emit<C: Serialize>(cli: &Cli, config: &C, verdicts: &[Verdict]) -> Result<Summary> {
    let report = Report::new(config, verdicts);
    match &cli.json {
        Some(Some(path)) => write_text(path, &report.to_json()?)?,
        Some(None) => say(&report.to_json()?),
        None => {}
    }
    if let Some(path) = &cli.csv {
        write_csv(path, verdicts)?;
    }
    if !matches!(cli.json, Some(None)) {
        for v in verdicts.iter().filter(|v| !v.passed()) {
            let note = v.note.as_deref().map(|n| format!(" ({n})")).unwrap_or_default();
            say(&format!("{v}: lhs={} rhs={}{note}\n", v.lhs, v.rhs));
        }
        let s = report.summary;
        say(&format!("pass {}, fail {}, unsupported {}\n", s.pass, s.fail, s.unsupported));
    }
    Ok(report.summary)
}

fn cmd_verify(cli: &Cli, args: &VerifyArgs) -> std::result::Result<Summary, UsageError> {
    let (families, ranges, engine, config) = usage(verify_plan(cli, args))?;
    let cfg = usage(float_config(cli))?;
    let pool = usage(thread_pool(cli.jobs))?;
    let jobs: Vec<_> = families.iter().flat_map(|&f| jobs_for(f, &ranges)).collect();
    let mut verdicts: Vec<Verdict> =
        pool.install(|| jobs.par_iter().flat_map_iter(|job| job.run(engine, &cfg)).collect());
    sort_verdicts(&mut verdicts);
    usage(emit(cli, &config, &verdicts))
}

fn cmd_mc(cli: &Cli) -> std::result::Result<Summary, UsageError> {
    if cli.samples < MIN_MC_SAMPLES {
        return Err(UsageError(anyhow::anyhow!("--samples must be >= {MIN_MC_SAMPLES}, got {}", cli.samples)));
    }
    let pool = usage(thread_pool(cli.jobs))?;
    let jobs = standard_jobs();
    let results: Vec<binomid_core::Result<Verdict>> = pool.install(|| {
        jobs.par_iter()
            .enumerate()
            .map(|(i, job)| job.run(&RngStream::new(cli.seed, i as u64), cli.samples))
            .collect()
    });
    let mut verdicts = usage(results.into_iter().collect::<binomid_core::Result<Vec<_>>>().map_err(Into::into))?;
    sort_verdicts(&mut verdicts);
    let config = McConfig { command: "mc", seed: cli.seed, samples: cli.samples, jobs: cli.jobs };
    usage(emit(cli, &config, &verdicts))
}

fn cmd_list(cli: &Cli) -> Result<()> {
    let entries: Vec<FamilyEntry> = IdentityFamily::ALL
        .iter()
        .map(|f| FamilyEntry { name: f.name(), anchor: f.anchor(), schema: f.schema() })
        .collect();
    match &cli.json {
        Some(Some(path)) => write_text(path, &(serde_json::to_string_pretty(&entries)? + "\n"))?,
        Some(None) => say(&(serde_json::to_string_pretty(&entries)? + "\n")),
        None => {
            for e in &entries {
                say(&format!("{:<26} {}  [{}]\n", e.name, e.anchor, e.schema));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Verify(args) => cmd_verify(&cli, args),
        Command::Mc => cmd_mc(&cli),
        Command::List { .. } => return usage(cmd_list(&cli)).map_or_else(fail_usage, |_| ExitCode::SUCCESS),
    };
    match outcome {
        Ok(s) if s.all_passed() => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => fail_usage(e),
    }
}

fn fail_usage(e: UsageError) -> ExitCode {
    eprintln!("error: {:#}", e.0);
    ExitCode::from(2)
}
