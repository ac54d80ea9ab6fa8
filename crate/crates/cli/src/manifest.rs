//! Run manifests: the reproducibility record written next to (or embedded
//! in) every output file. Carries resolved parameters and provenance, never
//! timestamps, so identical inputs give byte-identical outputs.

use std::path::{Path, PathBuf};

use serde::Serialize;

use casimir_oscillator::SimConfig64;

use crate::resolve::Resolved;

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: &'static str,
    pub version: &'static str,
    pub preset: Option<String>,
    pub config_path: Option<String>,
    pub physical: casimir_oscillator::PhysicalParams64,
    pub dimensionless: casimir_oscillator::DimensionlessParams64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sim: Option<SimConfig64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub collapsed: Option<bool>,
    pub outputs: Vec<String>,
    pub warnings: Vec<String>,
}

impl RunManifest {
    pub fn new(command: &'static str, resolved: &Resolved, outputs: Vec<String>) -> Self {
        Self {
            command,
            version: env!("CARGO_PKG_VERSION"),
            preset: resolved.preset.clone(),
            config_path: resolved.config_path.clone(),
            physical: resolved.model.physical,
            dimensionless: resolved.model.dimensionless,
            sim: None,
            collapsed: None,
            outputs,
            warnings: resolved.warnings.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }
}

/// Manifest path for a data file: `<path>.manifest.json`.
pub fn sidecar_path(data_path: &Path) -> PathBuf {
    let mut name = data_path.as_os_str().to_os_string();
    name.push(".manifest.json");
    PathBuf::from(name)
}
