//! `casimir`, the command-line front end.
//!
//! Subcommands: `analyze` (equilibrium and stability report), `simulate`
//! (trajectory CSV, optional SVG plot), `fit` (sinusoid fit of a trajectory
//! CSV), `sweep` (design-space grid from a spec file), and `paper-repro`
//! (end-to-end reproduction checks for the bundled reference preset).
//!
//! Exit codes are stable: 0 success (and physically stable where that
//! applies), 1 usage or input error, 2 physically unstable configuration or
//! failed reproduction checks.

// NaN-rejecting guards are written as `!(x > 0)`; see the library crate.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod manifest;
mod resolve;
mod svg;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use casimir_oscillator::{
    fit_sinusoid, paper_reproduction, rows_to_csv, run_sweep, solve_equilibrium, verlet_integrate,
    SweepSpec64, Trajectory64,
};

use manifest::RunManifest;
use resolve::{resolve_model, resolve_sim, ParamFlags, SimFlags};

const EXIT_OK: u8 = 0;
const EXIT_INPUT: u8 = 1;
const EXIT_UNSTABLE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "casimir",
    version,
    about = "Casimir-driven micro-spring oscillator: simulation, stability and design sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Locate equilibria and judge stability against pull-in.
    Analyze(AnalyzeArgs),
    /// Integrate the equation of motion and write a trajectory CSV.
    Simulate(SimulateArgs),
    /// Fit a trajectory CSV to Amp*(cos(omega*tau) - 1).
    Fit(FitArgs),
    /// Evaluate a (k, area, x0) grid from a sweep spec file.
    Sweep(SweepArgs),
    /// Run the bundled reference preset end to end and compare against its
    /// published values.
    PaperRepro(PaperReproArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    params: ParamFlags,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    params: ParamFlags,
    #[command(flatten)]
    sim: SimFlags,
    /// Write the trajectory CSV here instead of stdout. A manifest is
    /// written alongside as `<out>.manifest.json`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write an SVG plot of u against tau to this path.
    #[arg(long)]
    plot: Option<PathBuf>,
}

#[derive(Args)]
struct FitArgs {
    /// Trajectory CSV produced by `simulate`.
    csv: PathBuf,
    /// Write the JSON fit report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    /// Sweep spec file: flat `key = value` with `axis.<param>` lines.
    spec: PathBuf,
    /// Write the sweep CSV here instead of stdout. A manifest is written
    /// alongside as `<out>.manifest.json`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PaperReproArgs {
    /// Time step in t* units.
    #[arg(long)]
    dt: Option<f64>,
    /// Run length in harmonic periods.
    #[arg(long)]
    periods: Option<f64>,
    /// Emit the machine-readable JSON report instead of the table.
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap's own exit code conventions differ; keep 1 for usage
            // errors and 0 for --help/--version.
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Analyze(args) => cmd_analyze(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Fit(args) => cmd_fit(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::PaperRepro(args) => cmd_paper_repro(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn cmd_analyze(args: AnalyzeArgs) -> Result<u8, String> {
    let resolved = resolve_model(&args.params)?;
    for w in &resolved.warnings {
        eprintln!("warning: {w}");
    }
    let report = solve_equilibrium(&resolved.model);
    let manifest = RunManifest::new("analyze", &resolved, Vec::new());
    let mut doc = serde_json::to_value(&report).expect("report serializes");
    doc["manifest"] = serde_json::to_value(&manifest).expect("manifest serializes");
    let text = serde_json::to_string_pretty(&doc).expect("document serializes");
    match &args.out {
        Some(path) => fs::write(path, text + "\n").map_err(|e| format!("{}: {e}", path.display()))?,
        None => println!("{text}"),
    }
    Ok(if report.stable { EXIT_OK } else { EXIT_UNSTABLE })
}

fn cmd_simulate(args: SimulateArgs) -> Result<u8, String> {
    let resolved = resolve_model(&args.params)?;
    for w in &resolved.warnings {
        eprintln!("warning: {w}");
    }
    let cfg = resolve_sim(&args.sim, &resolved)?;
    let traj = verlet_integrate(&cfg).map_err(|e| e.to_string())?;
    if traj.collapsed {
        eprintln!(
            "warning: run collapsed onto the fixed plate after {} samples; output truncated",
            traj.len()
        );
    }

    let mut outputs = Vec::new();
    if let Some(path) = &args.out {
        outputs.push(path.display().to_string());
    }
    if let Some(path) = &args.plot {
        outputs.push(path.display().to_string());
    }
    let mut manifest = RunManifest::new("simulate", &resolved, outputs);
    manifest.sim = Some(cfg);
    manifest.collapsed = Some(traj.collapsed);

    let csv = traj.to_csv_string();
    match &args.out {
        Some(path) => {
            fs::write(path, &csv).map_err(|e| format!("{}: {e}", path.display()))?;
            let mpath = manifest::sidecar_path(path);
            fs::write(&mpath, manifest.to_json() + "\n")
                .map_err(|e| format!("{}: {e}", mpath.display()))?;
        }
        None => print!("{csv}"),
    }
    if let Some(path) = &args.plot {
        let svg = svg::polyline_plot(&traj);
        fs::write(path, svg).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(if traj.collapsed { EXIT_UNSTABLE } else { EXIT_OK })
}

fn cmd_fit(args: FitArgs) -> Result<u8, String> {
    let text = fs::read_to_string(&args.csv).map_err(|e| format!("{}: {e}", args.csv.display()))?;
    let traj = Trajectory64::from_csv_str(&args.csv.display().to_string(), &text)
        .map_err(|e| e.to_string())?;
    let fit = fit_sinusoid(&traj).map_err(|e| e.to_string())?;
    let mut doc = serde_json::to_value(fit).expect("fit serializes");
    doc["manifest"] = serde_json::json!({
        "command": "fit",
        "version": env!("CARGO_PKG_VERSION"),
        "input": args.csv.display().to_string(),
    });
    let text = serde_json::to_string_pretty(&doc).expect("document serializes");
    match &args.out {
        Some(path) => fs::write(path, text + "\n").map_err(|e| format!("{}: {e}", path.display()))?,
        None => println!("{text}"),
    }
    Ok(EXIT_OK)
}

fn cmd_sweep(args: SweepArgs) -> Result<u8, String> {
    let text = fs::read_to_string(&args.spec).map_err(|e| format!("{}: {e}", args.spec.display()))?;
    let name = args.spec.display().to_string();
    let entries = casimir_oscillator::config::parse_kv(&name, &text).map_err(|e| e.to_string())?;
    let spec = SweepSpec64::from_kv(&name, &entries).map_err(|e| e.to_string())?;
    let rows = run_sweep(&spec).map_err(|e| e.to_string())?;
    let csv = rows_to_csv(&spec, &rows);
    match &args.out {
        Some(path) => {
            fs::write(path, &csv).map_err(|e| format!("{}: {e}", path.display()))?;
            let manifest = serde_json::json!({
                "command": "sweep",
                "version": env!("CARGO_PKG_VERSION"),
                "spec_path": name,
                "spec": &spec,
                "outputs": [path.display().to_string()],
            });
            let mpath = manifest::sidecar_path(path);
            fs::write(
                &mpath,
                serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n",
            )
            .map_err(|e| format!("{}: {e}", mpath.display()))?;
        }
        None => print!("{csv}"),
    }
    Ok(EXIT_OK)
}

fn cmd_paper_repro(args: PaperReproArgs) -> Result<u8, String> {
    let dt = args.dt.unwrap_or_else(casimir_oscillator::default_dt::<f64>);
    let periods = args.periods.unwrap_or(5.0);
    let report = paper_reproduction(dt, periods).map_err(|e| e.to_string())?;
    if args.json {
        println!("{}", report.to_json());
    } else {
        println!("reference reproduction (dt = {dt:e}, {periods} periods)");
        println!(
            "quantity                   computed                reference    tolerance  status"
        );
        for check in &report.checks {
            let tol = match check.mode {
                casimir_oscillator::repro::CheckMode::Absolute => format!("{:.1e}", check.tolerance),
                casimir_oscillator::repro::CheckMode::Relative => {
                    format!("{:.1e} rel", check.tolerance)
                }
                casimir_oscillator::repro::CheckMode::AtLeast => ">=".to_string(),
            };
            println!(
                "{:<10} {:>24.16e} {:>24.16e} {:>12}  {}",
                check.name,
                check.computed,
                check.reference,
                tol,
                if check.pass { "PASS" } else { "FAIL" }
            );
        }
        println!("overall: {}", if report.all_pass { "PASS" } else { "FAIL" });
    }
    Ok(if report.all_pass { EXIT_OK } else { EXIT_UNSTABLE })
}
