//! Parameter resolution: preset, config file and flags merged into a model.
//!
//! Precedence is flags over config file over defaults. The `paper` preset
//! supplies a complete model and refuses to mix with physical-parameter
//! flags, so its pinned coefficients cannot be silently half-overridden.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;

use clap::Args;

use casimir_oscillator::config::parse_kv;
use casimir_oscillator::integrator::{default_dt, DEFAULT_PERIODS};
use casimir_oscillator::physics::surface_density;
use casimir_oscillator::{OscillatorModel64, PhysicalParams64, SimConfig64};

#[derive(Args, Debug)]
pub struct ParamFlags {
    /// Named preset; `paper` is the bundled reference device.
    #[arg(long)]
    pub preset: Option<String>,
    /// Config file with `key = value` lines (same keys as the flags).
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Spring stiffness (N/m).
    #[arg(long)]
    pub k: Option<f64>,
    /// Plate area (m^2).
    #[arg(long)]
    pub area: Option<f64>,
    /// Free spring length / initial gap (m).
    #[arg(long)]
    pub x0: Option<f64>,
    /// Surface mass density (kg/m^2); overrides rho-volume * thickness.
    #[arg(long = "rho-s")]
    pub rho_s: Option<f64>,
    /// Volume mass density (kg/m^3), used with --thickness.
    #[arg(long = "rho-volume")]
    pub rho_volume: Option<f64>,
    /// Moving plate thickness (m), used with --rho-volume.
    #[arg(long)]
    pub thickness: Option<f64>,
}

#[derive(Args, Debug)]
pub struct SimFlags {
    /// Time step in t* units (default 2*pi/1000).
    #[arg(long)]
    pub dt: Option<f64>,
    /// Run length in harmonic periods (default 5).
    #[arg(long)]
    pub periods: Option<f64>,
    /// Step count; overrides --periods when given.
    #[arg(long)]
    pub steps: Option<usize>,
    /// Initial displacement (x(0) - x0)/x0 (default 0).
    #[arg(long)]
    pub u0: Option<f64>,
    /// Initial velocity in l*/t* units (default 0).
    #[arg(long)]
    pub v0: Option<f64>,
    /// Override the dimensionless Casimir coefficient (0 gives the harmonic
    /// limit).
    #[arg(long = "c-hat")]
    pub c_hat: Option<f64>,
}

/// A fully resolved device plus provenance for the manifest.
pub struct Resolved {
    pub model: OscillatorModel64,
    pub preset: Option<String>,
    pub config_path: Option<String>,
    pub warnings: Vec<String>,
}

/// Keys accepted in config files for physical parameters.
const PARAM_KEYS: &[&str] = &[
    "preset",
    "k",
    "area",
    "x0",
    "rho_s",
    "rho_volume",
    "thickness",
];

pub fn resolve_model(flags: &ParamFlags) -> Result<Resolved, String> {
    // Later entries win inside the file; flags win over the file.
    let mut file: BTreeMap<String, f64> = BTreeMap::new();
    let mut file_preset: Option<String> = None;
    let config_path = flags.config.as_ref().map(|p| p.display().to_string());
    if let Some(path) = &flags.config {
        let name = path.display().to_string();
        let text = fs::read_to_string(path).map_err(|e| format!("{name}: {e}"))?;
        for entry in parse_kv(&name, &text).map_err(|e| e.to_string())? {
            if !PARAM_KEYS.contains(&entry.key.as_str()) {
                return Err(format!(
                    "{name}:{}: unknown key `{}` (expected one of {})",
                    entry.line,
                    entry.key,
                    PARAM_KEYS.join(", ")
                ));
            }
            if entry.key == "preset" {
                file_preset = Some(entry.value);
                continue;
            }
            let value: f64 = entry
                .value
                .parse()
                .map_err(|_| format!("{name}:{}: `{}` is not a number", entry.line, entry.value))?;
            file.insert(entry.key, value);
        }
    }

    let preset = flags.preset.clone().or(file_preset);
    let pick = |flag: Option<f64>, key: &str| flag.or_else(|| file.get(key).copied());
    let k = pick(flags.k, "k");
    let area = pick(flags.area, "area");
    let x0 = pick(flags.x0, "x0");
    let rho_s = pick(flags.rho_s, "rho_s");
    let rho_volume = pick(flags.rho_volume, "rho_volume");
    let thickness = pick(flags.thickness, "thickness");

    if let Some(name) = preset {
        if [k, area, x0, rho_s, rho_volume, thickness]
            .iter()
            .any(Option::is_some)
        {
            return Err(format!(
                "preset `{name}` pins all physical parameters; drop the k/area/x0/rho flags \
                 or drop --preset"
            ));
        }
        let model = OscillatorModel64::preset(&name)
            .ok_or_else(|| format!("unknown preset `{name}` (available: paper)"))?;
        // The reference device sits at A = x0^2, inside the flagged regime;
        // surface the note rather than special-casing the preset.
        let warnings = model.physical.warnings();
        return Ok(Resolved {
            model,
            preset: Some(name),
            config_path,
            warnings,
        });
    }

    let (Some(k), Some(area), Some(x0)) = (k, area, x0) else {
        return Err(
            "missing physical parameters: supply --preset paper, or --k, --area and --x0 \
             (plus optionally --rho-s or --rho-volume with --thickness)"
                .to_string(),
        );
    };
    let mut warnings = Vec::new();
    let rho_s = match (rho_s, rho_volume, thickness) {
        (Some(r), _, _) => r,
        (None, Some(rv), Some(th)) => {
            surface_density(rv, th).map_err(|e| e.to_string())?
        }
        (None, None, None) => {
            warnings.push(
                "rho_s not given; defaulting to 1 kg/m^2 (affects only the SI time scale t*, \
                 never stability or natural-unit results)"
                    .to_string(),
            );
            1.0
        }
        _ => return Err("rho-volume and thickness must be given together".to_string()),
    };
    let physical =
        PhysicalParams64::new(k, area, x0, rho_s).map_err(|e| e.to_string())?;
    warnings.extend(physical.warnings());
    Ok(Resolved {
        model: OscillatorModel64::from_physical(physical),
        preset: None,
        config_path,
        warnings,
    })
}

pub fn resolve_sim(flags: &SimFlags, resolved: &Resolved) -> Result<SimConfig64, String> {
    let dt = flags.dt.unwrap_or_else(default_dt::<f64>);
    let c_hat = flags
        .c_hat
        .unwrap_or(resolved.model.dimensionless.c_hat);
    let n_steps = match flags.steps {
        Some(n) => n,
        None => {
            let periods = flags.periods.unwrap_or(DEFAULT_PERIODS);
            let n = (periods * std::f64::consts::TAU / dt).round();
            if !(n > 0.0) || !n.is_finite() {
                return Err(format!("periods = {periods} and dt = {dt:e} give no steps"));
            }
            (n as usize).max(2)
        }
    };
    let cfg = SimConfig64 {
        c_hat,
        dt,
        n_steps,
        u0: flags.u0.unwrap_or(0.0),
        v0: flags.v0.unwrap_or(0.0),
    };
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}
