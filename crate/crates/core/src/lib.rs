//! Simulation and stability analysis of a Casimir-driven micro-spring
//! oscillator.
//!
//! A parallel-plate spring device is attracted by the quantum Casimir
//! pressure `-pi^2 hbar c / (240 x^4)`. This crate integrates the resulting
//! anharmonic equation of motion in natural units, locates equilibria and
//! turning points of the total potential, decides stability against pull-in
//! (stiction), fits the near-sinusoidal trajectory, and sweeps stiffness,
//! area and gap for design maps.
//!
//! Everything numeric is generic over the scalar type through
//! [`scalar::Real`]; the `*64` aliases at the crate root are the `f64`
//! instantiations used in practice.

// Validation guards are written as `!(x > 0)` so NaN lands on the error
// path; `x <= 0` would wave it through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod config;
pub mod error;
pub mod fit;
pub mod integrator;
pub mod physics;
pub mod repro;
pub mod roots;
pub mod scalar;
pub mod sweep;

pub use error::{Error, Result};
pub use scalar::Real;

pub use analysis::{
    critical_stiffness, effective_stiffness, equilibrium_offsets, harmonic_expansion,
    relative_potential, solve_equilibrium, solve_turning_point, stability_criterion,
    turning_offset, EquilibriumOffsets, EquilibriumReport, HarmonicExpansion, TurningPoint,
};
pub use fit::{fit_sinusoid, r_squared, FitResult};
pub use integrator::{
    acceleration, default_dt, detect_turning_points, energy_drift, rk4_integrate, total_energy,
    verlet_integrate, SimConfig, Trajectory, TurningEvent,
};
pub use physics::{
    casimir_energy_per_area, casimir_pressure, nondimensionalize, surface_density, total_potential,
    DimensionlessParams, OscillatorModel, PhysicalParams,
};
pub use repro::{paper_reproduction, ReproCheck, ReproReport};
pub use sweep::{
    run_sweep, run_sweep_serial, rows_to_csv, stability_boundary, AxisParam, BoundaryPoint,
    Spacing, SweepAxis, SweepRow, SweepSpec,
};

/// `f64` instantiations, the working precision of the tool.
pub type PhysicalParams64 = physics::PhysicalParams<f64>;
pub type DimensionlessParams64 = physics::DimensionlessParams<f64>;
pub type OscillatorModel64 = physics::OscillatorModel<f64>;
pub type SimConfig64 = integrator::SimConfig<f64>;
pub type Trajectory64 = integrator::Trajectory<f64>;
pub type TurningEvent64 = integrator::TurningEvent<f64>;
pub type EquilibriumReport64 = analysis::EquilibriumReport<f64>;
pub type TurningPoint64 = analysis::TurningPoint<f64>;
pub type HarmonicExpansion64 = analysis::HarmonicExpansion<f64>;
pub type FitResult64 = fit::FitResult<f64>;
pub type SweepSpec64 = sweep::SweepSpec<f64>;
pub type SweepRow64 = sweep::SweepRow<f64>;
pub type ReproReport64 = repro::ReproReport<f64>;

/// `f32` instantiations, suitable for dimensionless studies.
pub type PhysicalParams32 = physics::PhysicalParams<f32>;
pub type DimensionlessParams32 = physics::DimensionlessParams<f32>;
pub type OscillatorModel32 = physics::OscillatorModel<f32>;
pub type SimConfig32 = integrator::SimConfig<f32>;
pub type Trajectory32 = integrator::Trajectory<f32>;
