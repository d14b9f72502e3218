use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use mcfnet::config::Config;
use mcfnet::report;
use mcfnet::units::KM;
use mcfnet::{evaluate_scenario, sweep_fiber_response, validate_geometry, Error, Scenario};

#[derive(Parser)]
#[command(
    name = "mcfnet",
    version,
    about = "Multi-core fiber network planning toolkit"
)]
struct Cli {
    /// Run configuration (TOML). Built-in defaults when absent.
    #[arg(long, global = true, env = "MCFNET_CONFIG")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// PCC, MCC and crosstalk versus frequency for each trench ratio.
    Sweep(SweepArgs),
    /// Evaluate every configured scenario over the topology.
    Evaluate(EvaluateArgs),
    /// Check fiber geometries against fabrication limits.
    Validate(ValidateArgs),
}

#[derive(Args)]
struct GridArgs {
    /// Evaluate only this many evenly spaced channels per band.
    #[arg(long)]
    channels_per_band: Option<usize>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long)]
    reach_km: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    ratios: Option<Vec<f64>>,
    /// Fibers to sweep (repeatable).
    #[arg(long = "fiber")]
    fibers: Vec<String>,
    #[command(flatten)]
    grid: GridArgs,
}

#[derive(Args)]
struct EvaluateArgs {
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Lane counts; each scenario is run once per value.
    #[arg(long, value_delimiter = ',')]
    lanes: Option<Vec<usize>>,
    #[arg(long)]
    k: Option<usize>,
    /// Drop the crosstalk term and constraint.
    #[arg(long)]
    disable_icxt: bool,
    /// Only run the named scenarios (repeatable).
    #[arg(long = "scenario")]
    scenarios: Vec<String>,
    /// Skip tuples.csv.
    #[arg(long)]
    no_tuples: bool,
    #[command(flatten)]
    grid: GridArgs,
}

#[derive(Args)]
struct ValidateArgs {
    /// Fibers to check (repeatable); every loaded fiber when absent.
    #[arg(long = "fiber")]
    fibers: Vec<String>,
    /// Check each multi-core fiber at these trench width ratios instead.
    #[arg(long, value_delimiter = ',')]
    ratios: Option<Vec<f64>>,
}

/// Exit status 1.
#[derive(Debug)]
struct ValidationFailed(String);

impl std::fmt::Display for ValidationFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ValidationFailed {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<ValidationFailed>().is_some() {
        return 1;
    }
    match e.downcast_ref::<Error>() {
        Some(
            Error::InvalidInput(_)
            | Error::Config(_)
            | Error::File { .. }
            | Error::Topology(_)
            | Error::UnknownFiber(_)
            | Error::MissingCurve { .. },
        ) => 1,
        _ => 2,
    }
}

fn load_config(path: Option<&Path>, grid: Option<&GridArgs>) -> anyhow::Result<Config> {
    let mut cfg = match path {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    if let Some(n) = grid.and_then(|g| g.channels_per_band) {
        cfg.band.channels_per_band = Some(n);
    }
    Ok(cfg)
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let config = cli.config.as_deref();
    match cli.command {
        Command::Sweep(a) => sweep(load_config(config, Some(&a.grid))?, a),
        Command::Evaluate(a) => evaluate(load_config(config, Some(&a.grid))?, a),
        Command::Validate(a) => validate(load_config(config, None)?, a),
    }
}

fn create_out(dir: &Path) -> anyhow::Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))
}

fn sweep(cfg: Config, a: SweepArgs) -> anyhow::Result<()> {
    let band = cfg.band_plan()?;
    let fibers = cfg.fiber_library()?;
    let reach_km = a.reach_km.unwrap_or(cfg.sweep.reach_km);
    if reach_km.is_nan() || reach_km <= 0.0 {
        return Err(Error::InvalidInput(format!("reach {reach_km} km must be positive")).into());
    }
    let ratios = a.ratios.unwrap_or_else(|| cfg.sweep.ratios.clone());
    let names = if a.fibers.is_empty() {
        cfg.sweep.fibers.clone()
    } else {
        a.fibers
    };
    let mut rows = Vec::new();
    for name in &names {
        let spec = fibers.get(name)?;
        rows.extend(sweep_fiber_response(
            spec,
            &band,
            &ratios,
            reach_km * KM,
            cfg.coupling(),
        )?);
    }
    create_out(&a.out)?;
    report::write_sweep(&a.out, &rows)?;
    println!(
        "{} fibers x {} ratios x {} channels -> {}",
        names.len(),
        ratios.len(),
        band.channel_count(),
        a.out.display()
    );
    Ok(())
}

fn expand(base: Vec<Scenario>, a: &EvaluateArgs) -> anyhow::Result<Vec<Scenario>> {
    let selected: Vec<Scenario> = if a.scenarios.is_empty() {
        base
    } else {
        for want in &a.scenarios {
            if !base.iter().any(|s| &s.name == want) {
                return Err(Error::InvalidInput(format!("no scenario named `{want}`")).into());
            }
        }
        base.into_iter()
            .filter(|s| a.scenarios.contains(&s.name))
            .collect()
    };
    if selected.is_empty() {
        return Err(Error::Config("no scenarios configured".into()).into());
    }
    let mut out = Vec::new();
    for mut s in selected {
        if let Some(k) = a.k {
            s.k_paths = k;
        }
        s.disable_icxt |= a.disable_icxt;
        match &a.lanes {
            Some(lanes) => {
                for &n in lanes {
                    let mut v = s.clone();
                    v.lanes = n;
                    v.name = format!("{}/{n}", s.name);
                    out.push(v);
                }
            }
            None => out.push(s),
        }
    }
    Ok(out)
}

fn evaluate(cfg: Config, a: EvaluateArgs) -> anyhow::Result<()> {
    let engine = cfg.engine()?;
    let scenarios = expand(cfg.scenarios(), &a)?;
    let mut results = Vec::with_capacity(scenarios.len());
    let mut ul = Vec::with_capacity(scenarios.len());
    for s in &scenarios {
        let r = evaluate_scenario(&engine, s)?;
        let verdict = engine
            .classify(s, r.longest_path_km)?
            .iter()
            .all(|(_, c)| c.is_ul);
        ul.push(verdict);
        results.push(r);
    }
    create_out(&a.out)?;
    if !a.no_tuples {
        report::write_tuples(
            BufWriter::new(File::create(a.out.join("tuples.csv"))?),
            &results,
        )?;
    }
    report::write_cpct(
        BufWriter::new(File::create(a.out.join("cpct.csv"))?),
        &results,
    )?;
    report::write_summary(
        BufWriter::new(File::create(a.out.join("summary.csv"))?),
        &results,
        &ul,
    )?;
    for (r, u) in results.iter().zip(&ul) {
        let bands: BTreeMap<String, String> = r
            .per_band_gbps
            .iter()
            .map(|(b, v)| (b.to_string(), format!("{:.1}", v / 1e3)))
            .collect();
        println!(
            "{:<20} {:>5} lanes  {:>10.1} Tbps  UL {:<5}  per band (Tbps) {:?}",
            r.scenario.name,
            r.scenario.lanes,
            r.total_gbps / 1e3,
            u,
            bands
        );
    }
    Ok(())
}

fn validate(cfg: Config, a: ValidateArgs) -> anyhow::Result<()> {
    let fibers = cfg.fiber_library()?;
    let band = cfg.band_plan()?;
    let limits = cfg.geometry_limits();
    let names: Vec<String> = if a.fibers.is_empty() {
        fibers.iter().map(|f| f.name().to_owned()).collect()
    } else {
        a.fibers
    };
    let mut failed = Vec::new();
    for name in &names {
        let spec = fibers.get(name)?;
        let variants = match (&a.ratios, spec.is_multicore()) {
            (Some(rs), true) => rs
                .iter()
                .map(|&r| spec.with_trench_ratio(r))
                .collect::<Result<Vec<_>, _>>()?,
            _ => vec![spec.clone()],
        };
        for v in variants {
            let rep = validate_geometry(&v, Some(&band), &limits);
            let label = v
                .trench()
                .filter(|_| a.ratios.is_some())
                .map(|t| format!(" (w_tr/r1 = {})", t.trench_width() / t.core_radius()))
                .unwrap_or_default();
            if !label.is_empty() {
                println!("{name}{label}");
            }
            print!("{rep}");
            if rep.has_hard_violations() {
                failed.push(format!("{name}{label}"));
            }
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(ValidationFailed(format!("hard geometry violations: {}", failed.join(", "))).into())
    }
}
